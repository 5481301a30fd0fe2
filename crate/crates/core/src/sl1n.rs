//! The 3-graded basic Lie superalgebra sl(1|n) in its gl(n)-tensor basis,
//! and the embedding into W(n) that sends the level grading to the W grading.

use crate::linalg::{fmt_rat, rat, Rat};
use crate::walg::{WAlgebra, WElement};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Basis symbols: E_a at level 1 (odd), G^a_b at level 0 (even),
/// F^a at level -1 (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SLBasis {
    E(usize),
    G(usize, usize),
    F(usize),
}

impl SLBasis {
    pub fn level(&self) -> i64 {
        match self {
            SLBasis::E(_) => 1,
            SLBasis::G(_, _) => 0,
            SLBasis::F(_) => -1,
        }
    }

    pub fn parity(&self) -> u8 {
        match self {
            SLBasis::G(_, _) => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SLBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SLBasis::E(a) => write!(f, "E_{a}"),
            SLBasis::G(a, b) => write!(f, "G^{a}_{b}"),
            SLBasis::F(a) => write!(f, "F^{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SLElement {
    pub n: usize,
    terms: BTreeMap<SLBasis, Rat>,
}

impl SLElement {
    pub fn zero(n: usize) -> Self {
        SLElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(n: usize, b: SLBasis) -> Self {
        let mut e = SLElement::zero(n);
        e.add_term(b, &rat(1));
        e
    }

    pub fn add_term(&mut self, b: SLBasis, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.entry(b).or_insert_with(Rat::zero);
        *cur += c;
        if cur.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SLBasis, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &SLElement) -> SLElement {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.add_term(*b, c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SLElement {
        if c.is_zero() {
            return SLElement::zero(self.n);
        }
        SLElement {
            n: self.n,
            terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect(),
        }
    }
}

impl fmt::Display for SLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.iter().map(|(b, c)| format!("{}*{}", fmt_rat(c), b)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// sl(1|n) with its structure constants.
#[derive(Clone, Copy, Debug)]
pub struct SL1N {
    pub n: usize,
}

impl SL1N {
    pub fn new(n: usize) -> Self {
        SL1N { n }
    }

    pub fn full_basis(&self) -> Vec<SLBasis> {
        let mut out: Vec<SLBasis> = (0..self.n).map(SLBasis::E).collect();
        for a in 0..self.n {
            for b in 0..self.n {
                out.push(SLBasis::G(a, b));
            }
        }
        out.extend((0..self.n).map(SLBasis::F));
        out
    }

    pub fn dim(&self) -> usize {
        self.n * self.n + 2 * self.n
    }

    /// The grading element G = sum of all G^a_a.
    pub fn g_trace(&self) -> SLElement {
        let mut e = SLElement::zero(self.n);
        for a in 0..self.n {
            e.add_term(SLBasis::G(a, a), &rat(1));
        }
        e
    }

    pub fn bracket_basis(&self, x: &SLBasis, y: &SLBasis) -> SLElement {
        use SLBasis::*;
        let n = self.n;
        let mut out = SLElement::zero(n);
        match (*x, *y) {
            (E(_), E(_)) | (F(_), F(_)) => {}
            (G(a, b), G(c, d)) => {
                if b == c {
                    out.add_term(G(a, d), &rat(1));
                }
                if d == a {
                    out.add_term(G(c, b), &rat(-1));
                }
            }
            (E(a), F(b)) => {
                out.add_term(G(b, a), &rat(-1));
                if a == b {
                    out = out.add(&self.g_trace());
                }
            }
            (F(b), E(a)) => {
                // both odd: the bracket is symmetric
                return self.bracket_basis(&E(a), &F(b));
            }
            (G(a, b), F(c)) => {
                if b == c {
                    out.add_term(F(a), &rat(1));
                }
            }
            (F(c), G(a, b)) => {
                return self.bracket_basis(&G(a, b), &F(c)).scale(&rat(-1));
            }
            (G(a, b), E(c)) => {
                if c == a {
                    out.add_term(E(b), &rat(-1));
                }
            }
            (E(c), G(a, b)) => {
                return self.bracket_basis(&G(a, b), &E(c)).scale(&rat(-1));
            }
        }
        out
    }

    pub fn bracket(&self, x: &SLElement, y: &SLElement) -> SLElement {
        let mut out = SLElement::zero(self.n);
        for (bx, cx) in x.iter() {
            for (by, cy) in y.iter() {
                for (b, c) in self.bracket_basis(bx, by).iter() {
                    out.add_term(*b, &(c * cx * cy));
                }
            }
        }
        out
    }

    /// The injective homomorphism into W(n): E_a -> K_a, G^a_b -> K^a_b,
    /// F^a -> K^a.
    pub fn psi_basis(&self, b: &SLBasis) -> WElement {
        let w = WAlgebra::new(self.n).expect("valid rank");
        match *b {
            SLBasis::E(a) => w.canonical(&[], a),
            SLBasis::G(a, bb) => w.canonical(&[a], bb),
            SLBasis::F(a) => w.k_upper(a),
        }
    }

    pub fn psi(&self, x: &SLElement) -> WElement {
        let mut out = WElement::zero(self.n);
        for (b, c) in x.iter() {
            out = out.add(&self.psi_basis(b).scale(c));
        }
        out
    }
}
