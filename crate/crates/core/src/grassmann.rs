//! The Grassmann superalgebra on n odd generators, its contraction
//! operators, and sparse endomorphisms of it.
//!
//! Monomials are bitmasks over the generator indices 0..n; the bit pattern is
//! the strictly increasing index word, the empty mask is the identity E.
//! n is capped at MAX_N to keep the 2^n monomial basis at desk scale.

use crate::error::{Error, Result};
use crate::linalg::{fmt_rat, rat, Rat};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_N: usize = 12;

pub type Monomial = u16;

pub fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange { what: "grassmann rank n", value: n as i64 });
    }
    Ok(())
}

/// Number of generators in the monomial.
pub fn mono_degree(m: Monomial) -> u32 {
    m.count_ones()
}

/// Sign of sorting the concatenation of two disjoint sorted index words into
/// one sorted word; None when they share an index (the product vanishes).
pub fn merge_sign(a: Monomial, b: Monomial) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // For each generator in b, count the generators of a above it.
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let bit = bb.trailing_zeros();
        let above = a >> (bit + 1);
        inversions += above.count_ones();
        bb &= bb - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Sign picked up when the generator `b` is contracted out of the monomial:
/// (-1)^(number of generators below b).
fn removal_sign(mask: Monomial, b: usize) -> i64 {
    let below = (mask & ((1 << b) - 1)).count_ones();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mono_string(m: Monomial) -> String {
    if m == 0 {
        return "E".to_string();
    }
    let mut s = String::new();
    for i in 0..MAX_N {
        if m & (1 << i) != 0 {
            s.push_str(&format!("x{i}"));
        }
    }
    s
}

/// Sparse element of the Grassmann algebra: monomial -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrassmannElement {
    terms: BTreeMap<Monomial, Rat>,
}

impl GrassmannElement {
    pub fn zero() -> Self {
        GrassmannElement::default()
    }

    pub fn one() -> Self {
        GrassmannElement::monomial(0)
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, rat(1));
        GrassmannElement { terms }
    }

    pub fn generator(a: usize) -> Self {
        GrassmannElement::monomial(1 << a)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut e = GrassmannElement::zero();
        for (m, c) in it {
            e.add_term(m, &c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.entry(m).or_insert_with(Rat::zero);
        *cur += c;
        if cur.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, &Rat)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &GrassmannElement) -> GrassmannElement {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> GrassmannElement {
        if c.is_zero() {
            return GrassmannElement::zero();
        }
        GrassmannElement {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Parity of a homogeneous element; error if parities are mixed.
    pub fn parity(&self) -> Result<u8> {
        let mut par = None;
        for (m, _) in self.iter() {
            let p = (mono_degree(m) % 2) as u8;
            match par {
                None => par = Some(p),
                Some(q) if q == p => {}
                _ => return Err(Error::InhomogeneousOperand),
            }
        }
        Ok(par.unwrap_or(0))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter(|&&m| m != 0)
            .map(|&m| 15 - m.leading_zeros() as usize)
            .max()
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(m, c)| format!("{}*{}", fmt_rat(c), mono_string(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Associative product with x^a x^b = -x^b x^a.
pub fn gr_mul(x: &GrassmannElement, y: &GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::zero();
    for (ma, ca) in x.iter() {
        for (mb, cb) in y.iter() {
            if let Some(sign) = merge_sign(ma, mb) {
                out.add_term(ma | mb, &(ca * cb * rat(sign)));
            }
        }
    }
    out
}

/// The contraction with generator `b` (an odd derivation from the left):
/// on a q-monomial it removes `b` with the sign of moving it to the front.
pub fn contract(b: usize, x: &GrassmannElement) -> GrassmannElement {
    let bit = 1u16 << b;
    let mut out = GrassmannElement::zero();
    for (m, c) in x.iter() {
        if m & bit != 0 {
            out.add_term(m & !bit, &(c * rat(removal_sign(m, b))));
        }
    }
    out
}

/// Sparse endomorphism of the 2^n-dimensional Grassmann algebra, stored by
/// columns over the monomial basis. Missing columns are zero. The parity flag
/// is present when every stored column shifts monomial degree by the same
/// amount mod 2.
#[derive(Clone, Debug)]
pub struct EndOp {
    pub n: usize,
    cols: BTreeMap<Monomial, GrassmannElement>,
    parity: Option<u8>,
}

impl PartialEq for EndOp {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cols == other.cols
    }
}
impl Eq for EndOp {}

impl EndOp {
    pub fn zero(n: usize) -> Self {
        EndOp { n, cols: BTreeMap::new(), parity: Some(0) }
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..1u32 << n)
            .map(|m| (m as Monomial, GrassmannElement::monomial(m as Monomial)))
            .collect();
        EndOp { n, cols, parity: Some(0) }
    }

    pub fn from_columns<I: IntoIterator<Item = (Monomial, GrassmannElement)>>(
        n: usize,
        it: I,
    ) -> Self {
        let mut op = EndOp { n, cols: BTreeMap::new(), parity: Some(0) };
        for (m, e) in it {
            op.set_column(m, e);
        }
        op.recompute_parity();
        op
    }

    fn set_column(&mut self, m: Monomial, e: GrassmannElement) {
        if e.is_zero() {
            self.cols.remove(&m);
        } else {
            self.cols.insert(m, e);
        }
    }

    fn recompute_parity(&mut self) {
        let mut par: Option<u8> = None;
        for (m, e) in &self.cols {
            for (im, _) in e.iter() {
                let shift = ((mono_degree(im) + mono_degree(*m)) % 2) as u8;
                match par {
                    None => par = Some(shift),
                    Some(p) if p == shift => {}
                    _ => {
                        self.parity = None;
                        return;
                    }
                }
            }
        }
        self.parity = Some(par.unwrap_or(0));
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn parity(&self) -> Option<u8> {
        if self.is_zero() {
            Some(0)
        } else {
            self.parity
        }
    }

    pub fn column(&self, m: Monomial) -> GrassmannElement {
        self.cols.get(&m).cloned().unwrap_or_else(GrassmannElement::zero)
    }

    pub fn columns(&self) -> impl Iterator<Item = (Monomial, &GrassmannElement)> {
        self.cols.iter().map(|(m, e)| (*m, e))
    }

    pub fn apply(&self, x: &GrassmannElement) -> GrassmannElement {
        let mut out = GrassmannElement::zero();
        for (m, c) in x.iter() {
            if let Some(col) = self.cols.get(&m) {
                for (im, ic) in col.iter() {
                    out.add_term(im, &(c * ic));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &EndOp) -> Result<EndOp> {
        if self.n != other.n {
            return Err(Error::RankMismatch { expected: self.n, found: other.n });
        }
        let mut out = self.clone();
        for (m, e) in other.columns() {
            let sum = out.column(m).add(e);
            out.set_column(m, sum);
        }
        out.parity = match (self.parity(), other.parity()) {
            _ if self.is_zero() => other.parity,
            _ if other.is_zero() => self.parity,
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> EndOp {
        if c.is_zero() {
            return EndOp::zero(self.n);
        }
        EndOp {
            n: self.n,
            cols: self.cols.iter().map(|(m, e)| (*m, e.scale(c))).collect(),
            parity: self.parity,
        }
    }

    /// Composition self . other (apply `other` first).
    pub fn compose(&self, other: &EndOp) -> Result<EndOp> {
        if self.n != other.n {
            return Err(Error::RankMismatch { expected: self.n, found: other.n });
        }
        let mut out = EndOp::zero(self.n);
        for (m, e) in other.columns() {
            out.set_column(m, self.apply(e));
        }
        out.parity = match (self.parity, other.parity) {
            (Some(a), Some(b)) => Some((a + b) % 2),
            _ => None,
        };
        Ok(out)
    }

    /// Supercommutator f.g - (-1)^{|f||g|} g.f; both operands must have a
    /// definite parity.
    pub fn supercommutator(&self, other: &EndOp) -> Result<EndOp> {
        let pf = self.parity().ok_or(Error::InhomogeneousOperand)?;
        let pg = other.parity().ok_or(Error::InhomogeneousOperand)?;
        let fg = self.compose(other)?;
        let gf = other.compose(self)?;
        let sign = if pf * pg % 2 == 1 { rat(1) } else { rat(-1) };
        fg.add(&gf.scale(&sign))
    }

    /// Validate that the parity flag is consistent with every stored column.
    pub fn parity_consistent(&self) -> bool {
        let mut probe = self.clone();
        probe.recompute_parity();
        probe.parity == self.parity
    }
}

impl fmt::Display for EndOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let shown: Vec<String> = self
            .columns()
            .take(4)
            .map(|(m, e)| format!("{} -> {}", mono_string(m), e))
            .collect();
        let more = self.cols.len().saturating_sub(4);
        let tail = if more > 0 { format!("; ... {more} more") } else { String::new() };
        write!(f, "[{}{}]", shown.join("; "), tail)
    }
}

/// Left multiplication by a Grassmann element, as an operator.
pub fn leftmul(n: usize, x: &GrassmannElement) -> Result<EndOp> {
    check_n(n)?;
    let cols = (0..1u32 << n).map(|m| {
        let m = m as Monomial;
        (m, gr_mul(x, &GrassmannElement::monomial(m)))
    });
    Ok(EndOp::from_columns(n, cols))
}

/// The contraction with generator `b`, as an operator.
pub fn contraction_op(n: usize, b: usize) -> Result<EndOp> {
    check_n(n)?;
    if b >= n {
        return Err(Error::OutOfRange { what: "generator index", value: b as i64 });
    }
    let cols = (0..1u32 << n).map(|m| {
        let m = m as Monomial;
        (m, contract(b, &GrassmannElement::monomial(m)))
    });
    Ok(EndOp::from_columns(n, cols))
}

/// The basis derivation with the given upper index word and lower index:
/// contract the lower index, then left-multiply by the uppers. Repeated upper
/// indices give the zero operator.
pub fn k_op(n: usize, uppers: &[usize], lower: usize) -> Result<EndOp> {
    check_n(n)?;
    let mut mask: Monomial = 0;
    let mut word = GrassmannElement::one();
    for &a in uppers {
        if a >= n {
            return Err(Error::OutOfRange { what: "upper index", value: a as i64 });
        }
        if mask & (1 << a) != 0 {
            return Ok(EndOp::zero(n));
        }
        mask |= 1 << a;
        word = gr_mul(&word, &GrassmannElement::generator(a));
    }
    let lm = leftmul(n, &word)?;
    lm.compose(&contraction_op(n, lower)?)
}
