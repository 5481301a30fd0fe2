//! Abstract generator symbols, relation expressions, and their evaluation in
//! any realization.
//!
//! The generating set has three families: e_a (a = 0..=r, with e_0 odd),
//! f_a (a = 1..=r, even), and the odd f_{0a} (a = 0 or 2..=r). The Cartan
//! elements h_a are derived symbols: h_1 = [e_1, f_1] and h_a = [e_0, f_{0a}]
//! otherwise; they may appear as leaves in expressions and are resolved by
//! the assignment at evaluation time.
//!
//! Expressions carry a bidegree (i, j) counting e_0 and f_{0a} leaves; the
//! difference i - j is the level of the word, and every emitted relation is
//! homogeneous in that level.

use crate::cartan::{GreyCartan, Series};
use crate::error::{Error, Result};
use crate::linalg::{fmt_rat, rat, Rat};
use crate::walg::{WAlgebra, WElement};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenKind {
    E,
    F,
    F0,
}

/// A generator symbol with its index, validated against the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenSym {
    pub kind: GenKind,
    pub index: usize,
}

impl GenSym {
    pub fn e(a: usize) -> Self {
        GenSym { kind: GenKind::E, index: a }
    }
    pub fn f(a: usize) -> Self {
        GenSym { kind: GenKind::F, index: a }
    }
    pub fn f0(a: usize) -> Self {
        GenSym { kind: GenKind::F0, index: a }
    }

    pub fn valid_for_rank(&self, r: usize) -> bool {
        match self.kind {
            GenKind::E => self.index <= r,
            GenKind::F => (1..=r).contains(&self.index),
            GenKind::F0 => self.index == 0 || (2..=r).contains(&self.index),
        }
    }

    /// Odd generators are e_0 and every f_{0a}.
    pub fn parity(&self) -> u8 {
        match self.kind {
            GenKind::E if self.index == 0 => 1,
            GenKind::F0 => 1,
            _ => 0,
        }
    }

    /// Bidegree (number of e_0, number of f_{0a}).
    pub fn bidegree(&self) -> (usize, usize) {
        match self.kind {
            GenKind::E if self.index == 0 => (1, 0),
            GenKind::F0 => (0, 1),
            _ => (0, 0),
        }
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::E => write!(f, "e{}", self.index),
            GenKind::F => write!(f, "f{}", self.index),
            GenKind::F0 => write!(f, "f0{}", self.index),
        }
    }
}

/// A leaf of a bracket word: a true generator or a derived Cartan symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Leaf {
    Gen(GenSym),
    H(usize),
}

impl Leaf {
    pub fn parity(&self) -> u8 {
        match self {
            Leaf::Gen(g) => g.parity(),
            Leaf::H(_) => 0,
        }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        match self {
            Leaf::Gen(g) => g.bidegree(),
            // h_1 = [e_1, f_1]; every other h_a = [e_0, f_{0a}]
            Leaf::H(1) => (0, 0),
            Leaf::H(_) => (1, 1),
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Gen(g) => write!(f, "{g}"),
            Leaf::H(a) => write!(f, "h{a}"),
        }
    }
}

/// Right-nested bracket word over leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Leaf(Leaf),
    Br(Box<Word>, Box<Word>),
}

impl Word {
    pub fn gen(g: GenSym) -> Word {
        Word::Leaf(Leaf::Gen(g))
    }

    pub fn h(a: usize) -> Word {
        Word::Leaf(Leaf::H(a))
    }

    pub fn br(x: Word, y: Word) -> Word {
        Word::Br(Box::new(x), Box::new(y))
    }

    /// (ad x)^k applied to y, right-nested.
    pub fn ad_pow(x: &Word, k: usize, y: Word) -> Word {
        let mut out = y;
        for _ in 0..k {
            out = Word::br(x.clone(), out);
        }
        out
    }

    pub fn bidegree(&self) -> (usize, usize) {
        match self {
            Word::Leaf(l) => l.bidegree(),
            Word::Br(a, b) => {
                let (i1, j1) = a.bidegree();
                let (i2, j2) = b.bidegree();
                (i1 + i2, j1 + j2)
            }
        }
    }

    pub fn level(&self) -> i64 {
        let (i, j) = self.bidegree();
        i as i64 - j as i64
    }

    pub fn parity(&self) -> u8 {
        match self {
            Word::Leaf(l) => l.parity(),
            Word::Br(a, b) => (a.parity() + b.parity()) % 2,
        }
    }

    pub fn leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            Word::Leaf(l) => out.push(*l),
            Word::Br(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    /// Substitute every leaf by an expression.
    pub fn substitute(&self, map: &dyn Fn(&Leaf) -> Expr) -> Expr {
        match self {
            Word::Leaf(l) => map(l),
            Word::Br(a, b) => {
                let ea = a.substitute(map);
                let eb = b.substitute(map);
                let mut out = Expr::zero();
                for (ca, wa) in &ea.terms {
                    for (cb, wb) in &eb.terms {
                        out.add_term(ca * cb, Word::br(wa.clone(), wb.clone()));
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Leaf(l) => write!(f, "{l}"),
            Word::Br(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Formal rational combination of bracket words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr {
    pub terms: Vec<(Rat, Word)>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::default()
    }

    pub fn word(w: Word) -> Expr {
        Expr { terms: vec![(rat(1), w)] }
    }

    pub fn add_term(&mut self, c: Rat, w: Word) {
        if !c.is_zero() {
            self.terms.push((c, w));
        }
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, c: &Rat) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { terms: self.terms.iter().map(|(x, w)| (x * c, w.clone())).collect() }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.scale(&rat(-1)))
    }

    /// Common level when every term agrees, None otherwise.
    pub fn homogeneous_level(&self) -> Option<i64> {
        let mut lv = None;
        for (_, w) in &self.terms {
            match lv {
                None => lv = Some(w.level()),
                Some(l) if l == w.level() => {}
                _ => return None,
            }
        }
        lv
    }

    pub fn homogeneous_parity(&self) -> Option<u8> {
        let mut par = None;
        for (_, w) in &self.terms {
            match par {
                None => par = Some(w.parity()),
                Some(p) if p == w.parity() => {}
                _ => return None,
            }
        }
        par
    }

    pub fn substitute(&self, map: &dyn Fn(&Leaf) -> Expr) -> Expr {
        let mut out = Expr::zero();
        for (c, w) in &self.terms {
            out = out.add(&w.substitute(map).scale(c));
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(c, w)| format!("{}*{}", fmt_rat(c), w)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A named defining relation: the expression must evaluate to zero.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub expr: Expr,
}

impl Relation {
    fn new(id: String, expr: Expr) -> Self {
        Relation { id, expr }
    }
}

/// Indices a of the f_{0a} family for rank r: 0 and 2..=r.
pub fn f0_indices(r: usize) -> Vec<usize> {
    let mut v = vec![0];
    v.extend(2..=r);
    v
}

/// The defining relation set of the presentation attached to an extended
/// Cartan matrix. Relations that merely define the derived symbols h_a
/// (namely [e_1, f_1] = h_1 and [e_0, f_{0a}] = h_a) are not emitted; see
/// [`h_consistency_relations`] for those residuals.
pub fn relation_set(grey: &GreyCartan) -> Vec<Relation> {
    let r = grey.r;
    let b = &grey.b;
    let mut out = Vec::new();

    // [h_a, e_b] = B_ab e_b
    for a in 0..=r {
        for bb in 0..=r {
            let expr = Expr::word(Word::br(Word::h(a), Word::gen(GenSym::e(bb))))
                .sub(&Expr::word(Word::gen(GenSym::e(bb))).scale(&rat(b[a][bb])));
            out.push(Relation::new(format!("eigen-e:{a}:{bb}"), expr));
        }
    }
    // [h_a, f_b] = -B_ab f_b
    for a in 0..=r {
        for bb in 1..=r {
            let expr = Expr::word(Word::br(Word::h(a), Word::gen(GenSym::f(bb))))
                .add(&Expr::word(Word::gen(GenSym::f(bb))).scale(&rat(b[a][bb])));
            out.push(Relation::new(format!("eigen-f:{a}:{bb}"), expr));
        }
    }
    // [e_a, f_b] = delta_ab h_b, except the instance defining h_1
    for a in 0..=r {
        for bb in 1..=r {
            if a == 1 && bb == 1 {
                continue;
            }
            let mut expr =
                Expr::word(Word::br(Word::gen(GenSym::e(a)), Word::gen(GenSym::f(bb))));
            if a == bb {
                expr = expr.sub(&Expr::word(Word::h(bb)));
            }
            out.push(Relation::new(format!("pair-ef:{a}:{bb}"), expr));
        }
    }
    // (ad e_a)^{1-B_ab}(e_b) = 0 and the f mirror
    for a in 0..=r {
        for bb in 0..=r {
            if a == bb {
                continue;
            }
            let k = (1 - b[a][bb]) as usize;
            let w = Word::ad_pow(&Word::gen(GenSym::e(a)), k, Word::gen(GenSym::e(bb)));
            out.push(Relation::new(format!("serre-e:{a}:{bb}"), Expr::word(w)));
        }
    }
    for a in 1..=r {
        for bb in 1..=r {
            if a == bb {
                continue;
            }
            let k = (1 - b[a][bb]) as usize;
            let w = Word::ad_pow(&Word::gen(GenSym::f(a)), k, Word::gen(GenSym::f(bb)));
            out.push(Relation::new(format!("serre-f:{a}:{bb}"), Expr::word(w)));
        }
    }
    // [h_a, f_{0b}] = -B_{a0} f_{0b}
    for a in 0..=r {
        for bb in f0_indices(r) {
            let expr = Expr::word(Word::br(Word::h(a), Word::gen(GenSym::f0(bb))))
                .add(&Expr::word(Word::gen(GenSym::f0(bb))).scale(&rat(b[a][0])));
            out.push(Relation::new(format!("eigen-f0:{a}:{bb}"), expr));
        }
    }
    // [e_1, f_{0a}] = 0
    for a in f0_indices(r) {
        let w = Word::br(Word::gen(GenSym::e(1)), Word::gen(GenSym::f0(a)));
        out.push(Relation::new(format!("e1-f0:{a}"), Expr::word(w)));
    }
    // [e_a, [e_a, f_{0b}]] = [f_a, [f_a, f_{0b}]] = 0
    for a in 0..=r {
        for bb in f0_indices(r) {
            let w = Word::ad_pow(&Word::gen(GenSym::e(a)), 2, Word::gen(GenSym::f0(bb)));
            out.push(Relation::new(format!("sq-e:{a}:{bb}"), Expr::word(w)));
        }
    }
    for a in 1..=r {
        for bb in f0_indices(r) {
            let w = Word::ad_pow(&Word::gen(GenSym::f(a)), 2, Word::gen(GenSym::f0(bb)));
            out.push(Relation::new(format!("sq-f:{a}:{bb}"), Expr::word(w)));
        }
    }
    // [e_i, [f_j, f_{0a}]] = delta_ij B_aj f_{0j}   (i, j = 2..=r)
    for i in 2..=r {
        for j in 2..=r {
            for a in f0_indices(r) {
                let w = Word::br(
                    Word::gen(GenSym::e(i)),
                    Word::br(Word::gen(GenSym::f(j)), Word::gen(GenSym::f0(a))),
                );
                let mut expr = Expr::word(w);
                if i == j {
                    expr =
                        expr.sub(&Expr::word(Word::gen(GenSym::f0(j))).scale(&rat(b[a][j])));
                }
                out.push(Relation::new(format!("cross:{i}:{j}:{a}"), expr));
            }
        }
    }
    out
}

/// The residuals of the defining equations for the derived symbols h_a:
/// [e_1, f_1] - h_1 and [e_0, f_{0a}] - h_a. These vanish identically when
/// the h images are derived from the generator images, and provide a
/// consistency check when they are supplied independently.
pub fn h_consistency_relations(r: usize) -> Vec<Relation> {
    let mut out = vec![Relation::new(
        "h-def:1".to_string(),
        Expr::word(Word::br(Word::gen(GenSym::e(1)), Word::gen(GenSym::f(1))))
            .sub(&Expr::word(Word::h(1))),
    )];
    for a in f0_indices(r) {
        out.push(Relation::new(
            format!("h-def:{a}"),
            Expr::word(Word::br(Word::gen(GenSym::e(0)), Word::gen(GenSym::f0(a))))
                .sub(&Expr::word(Word::h(a))),
        ));
    }
    out
}

/// Level -2 generators of the ideal cut out of the free algebra below the
/// local part. The A series needs three families; in the D and E series the
/// middle family is dropped.
pub fn ideal_relations(series: Series, r: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let f0s = f0_indices(r);
    for (i, &a) in f0s.iter().enumerate() {
        for &b in &f0s[i..] {
            let w = Word::br(Word::gen(GenSym::f0(a)), Word::gen(GenSym::f0(b)));
            out.push(Relation::new(format!("anti-f0:{a}:{b}"), Expr::word(w)));
        }
    }
    if series == Series::A {
        for i in 3..=r {
            for j in i..=r {
                let w = Word::br(
                    Word::gen(GenSym::f0(i)),
                    Word::br(Word::gen(GenSym::f(1)), Word::gen(GenSym::f0(j))),
                );
                out.push(Relation::new(format!("mid:{i}:{j}"), Expr::word(w)));
            }
        }
    }
    for i in 3..=r {
        let inner = Word::br(Word::gen(GenSym::f(1)), Word::gen(GenSym::f0(i)));
        let expr = Expr::word(Word::br(Word::gen(GenSym::f0(2)), inner.clone()))
            .sub(&Expr::word(Word::br(Word::gen(GenSym::f0(0)), inner)));
        out.push(Relation::new(format!("diff:{i}"), expr));
    }
    out
}

/// A realization: somewhere the generator images live and can be bracketed.
pub trait Realization {
    type Elt: Clone + PartialEq + fmt::Display;
    fn zero(&self) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn scale(&self, c: &Rat, a: &Self::Elt) -> Self::Elt;
    fn bracket(&self, a: &Self::Elt, b: &Self::Elt) -> Result<Self::Elt>;
    fn is_zero(&self, a: &Self::Elt) -> bool;
}

/// Images of the generator symbols (and of the derived h symbols).
#[derive(Clone, Debug, Default)]
pub struct Assignment<E> {
    images: BTreeMap<Leaf, E>,
}

impl<E: Clone> Assignment<E> {
    pub fn new() -> Self {
        Assignment { images: BTreeMap::new() }
    }

    pub fn set_gen(&mut self, g: GenSym, img: E) {
        self.images.insert(Leaf::Gen(g), img);
    }

    pub fn set_h(&mut self, a: usize, img: E) {
        self.images.insert(Leaf::H(a), img);
    }

    pub fn get(&self, l: &Leaf) -> Result<&E> {
        self.images.get(l).ok_or_else(|| Error::MissingSymbol { symbol: format!("{l}") })
    }

    pub fn leaves(&self) -> impl Iterator<Item = (&Leaf, &E)> {
        self.images.iter()
    }

    /// Fill in every missing h image from its defining bracket.
    pub fn derive_h<R: Realization<Elt = E>>(&mut self, alg: &R, r: usize) -> Result<()> {
        for a in 0..=r {
            if self.images.contains_key(&Leaf::H(a)) {
                continue;
            }
            let img = if a == 1 {
                let e1 = self.get(&Leaf::Gen(GenSym::e(1)))?.clone();
                let f1 = self.get(&Leaf::Gen(GenSym::f(1)))?.clone();
                alg.bracket(&e1, &f1)?
            } else {
                let e0 = self.get(&Leaf::Gen(GenSym::e(0)))?.clone();
                let f0a = self.get(&Leaf::Gen(GenSym::f0(a)))?.clone();
                alg.bracket(&e0, &f0a)?
            };
            self.images.insert(Leaf::H(a), img);
        }
        Ok(())
    }
}

fn eval_word<R: Realization>(w: &Word, asg: &Assignment<R::Elt>, alg: &R) -> Result<R::Elt> {
    match w {
        Word::Leaf(l) => Ok(asg.get(l)?.clone()),
        Word::Br(a, b) => {
            let ea = eval_word(a, asg, alg)?;
            let eb = eval_word(b, asg, alg)?;
            alg.bracket(&ea, &eb)
        }
    }
}

/// Structural evaluation of an expression under an assignment.
pub fn evaluate<R: Realization>(
    expr: &Expr,
    asg: &Assignment<R::Elt>,
    alg: &R,
) -> Result<R::Elt> {
    let mut acc = alg.zero();
    for (c, w) in &expr.terms {
        let v = eval_word(w, asg, alg)?;
        acc = alg.add(&acc, &alg.scale(c, &v));
    }
    Ok(acc)
}

/// W(n) as a realization of the presentation.
#[derive(Clone, Copy, Debug)]
pub struct WRealization(pub WAlgebra);

impl Realization for WRealization {
    type Elt = WElement;

    fn zero(&self) -> WElement {
        WElement::zero(self.0.n)
    }
    fn add(&self, a: &WElement, b: &WElement) -> WElement {
        a.add(b)
    }
    fn scale(&self, c: &Rat, a: &WElement) -> WElement {
        a.scale(c)
    }
    fn bracket(&self, a: &WElement, b: &WElement) -> Result<WElement> {
        Ok(self.0.bracket(a, b))
    }
    fn is_zero(&self, a: &WElement) -> bool {
        a.is_zero()
    }
}

/// The generator images inside W(n): e_0 = K_0, e_i and f_i the neighbouring
/// level-zero symbols, f_{00} the traced symbol K^0, and f_{0i} the
/// difference of the two 0i-symbols. All h images are supplied explicitly.
pub fn chevalley_assignment(n: usize) -> Result<(WRealization, Assignment<WElement>)> {
    let alg = WAlgebra::new(n)?;
    let r = n - 1;
    let mut asg = Assignment::new();
    for a in 0..=r {
        asg.set_gen(GenSym::e(a), alg.e(a));
        asg.set_h(a, alg.h(a));
    }
    for a in 1..=r {
        asg.set_gen(GenSym::f(a), alg.f(a));
    }
    for a in f0_indices(r) {
        asg.set_gen(GenSym::f0(a), alg.f0(a));
    }
    Ok((WRealization(alg), asg))
}

/// Dimension of the free Lie superalgebra on a generating space of the given
/// superdimension, at the stated (shallow) level.
pub fn free_level_dim(even: usize, odd: usize, level: i64) -> Result<usize> {
    let d = even + odd;
    match level {
        -1 => Ok(d),
        -2 => Ok(even * (even.saturating_sub(1)) / 2 + even * odd + odd * (odd + 1) / 2),
        -3 => {
            // Poincare-Birkhoff-Witt at degree three: subtract from the free
            // associative count the super-symmetric cube of degree one and
            // the product of degrees one and two.
            let l2 = free_level_dim(even, odd, -2)?;
            let s3 = crate::binomial(even + 2, 3)
                + crate::binomial(even + 1, 2) * odd
                + even * crate::binomial(odd, 2)
                + crate::binomial(odd, 3);
            Ok(d * d * d - d * l2 - s3)
        }
        _ => Err(Error::OutOfRange { what: "free superalgebra level", value: level }),
    }
}

/// Count of canonical recursively-defined symbols with p upper indices: the
/// fully antisymmetric words with the lower index outside the uppers, plus
/// those whose last upper index repeats the lower one. Always n*C(n,p).
pub fn ktilde_span(n: usize, p: usize) -> Result<usize> {
    if p < 3 {
        return Err(Error::OutOfRange { what: "recursion degree p", value: p as i64 });
    }
    if p > n {
        return Ok(0);
    }
    Ok(crate::binomial(n, p) * (n - p) + n * crate::binomial(n - 1, p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;

    fn a_grey(r: usize) -> GreyCartan {
        build_cartan(Series::A, r).unwrap()
    }

    #[test]
    fn relation_count_for_rank_two() {
        assert_eq!(relation_set(&a_grey(2)).len(), 48);
    }

    #[test]
    fn relations_are_level_homogeneous() {
        for r in 2..=4 {
            for rel in relation_set(&a_grey(r)) {
                assert!(
                    rel.expr.homogeneous_level().is_some(),
                    "relation {} mixes levels",
                    rel.id
                );
                assert!(
                    rel.expr.homogeneous_parity().is_some(),
                    "relation {} mixes parities",
                    rel.id
                );
            }
        }
    }

    #[test]
    fn serre_with_zero_link_is_a_plain_bracket() {
        let rels = relation_set(&a_grey(2));
        let serre02 = rels.iter().find(|r| r.id == "serre-e:0:2").unwrap();
        // B_02 = 0, so the relation is the single bracket [e_0, e_2]
        assert_eq!(
            serre02.expr,
            Expr::word(Word::br(Word::gen(GenSym::e(0)), Word::gen(GenSym::e(2))))
        );
    }

    #[test]
    fn bidegree_bookkeeping() {
        // [e_0, f_{0a}] has bidegree (1,1), hence level 0, like its target h_a
        let w = Word::br(Word::gen(GenSym::e(0)), Word::gen(GenSym::f0(2)));
        assert_eq!(w.bidegree(), (1, 1));
        assert_eq!(w.level(), 0);
        assert_eq!(Word::h(2).level(), 0);
        assert_eq!(Word::h(2).bidegree(), (1, 1));
        assert_eq!(Word::h(1).bidegree(), (0, 0));
    }

    #[test]
    fn all_relations_vanish_in_w3() {
        let (alg, mut asg) = chevalley_assignment(3).unwrap();
        asg.derive_h(&alg, 2).unwrap();
        for rel in relation_set(&a_grey(2)) {
            let v = evaluate(&rel.expr, &asg, &alg).unwrap();
            assert!(alg.is_zero(&v), "relation {} has residual {v}", rel.id);
        }
        for rel in h_consistency_relations(2) {
            let v = evaluate(&rel.expr, &asg, &alg).unwrap();
            assert!(alg.is_zero(&v), "h definition {} has residual {v}", rel.id);
        }
    }

    #[test]
    fn ideal_relation_families() {
        // rank 2: only the anticommutator family survives
        let rels = ideal_relations(Series::A, 2);
        assert_eq!(rels.len(), 3);
        assert!(rels.iter().all(|r| r.id.starts_with("anti-f0")));
        // rank 4: 10 anticommutators, 3 middle relations, 2 difference relations
        let rels = ideal_relations(Series::A, 4);
        assert_eq!(rels.iter().filter(|r| r.id.starts_with("anti-f0")).count(), 10);
        assert_eq!(rels.iter().filter(|r| r.id.starts_with("mid")).count(), 3);
        assert_eq!(rels.iter().filter(|r| r.id.starts_with("diff")).count(), 2);
        // D and E drop the middle family
        for s in [Series::D, Series::E] {
            let rels = ideal_relations(s, 6);
            assert!(rels.iter().all(|r| !r.id.starts_with("mid")), "{s:?}");
        }
    }

    #[test]
    fn ideal_relations_vanish_in_w() {
        for n in 3..=4usize {
            let (alg, mut asg) = chevalley_assignment(n).unwrap();
            asg.derive_h(&alg, n - 1).unwrap();
            for rel in ideal_relations(Series::A, n - 1) {
                let v = evaluate(&rel.expr, &asg, &alg).unwrap();
                assert!(alg.is_zero(&v), "n={n}: {} residual {v}", rel.id);
            }
        }
    }

    #[test]
    fn evaluation_reports_missing_symbols() {
        let (alg, _) = chevalley_assignment(3).unwrap();
        let asg: Assignment<crate::walg::WElement> = Assignment::new();
        let expr = Expr::word(Word::gen(GenSym::e(0)));
        assert!(matches!(evaluate(&expr, &asg, &alg), Err(Error::MissingSymbol { .. })));
    }

    #[test]
    fn free_superalgebra_level_dimensions() {
        // nine odd generators: 9*10/2 at level -2
        assert_eq!(free_level_dim(0, 9, -2).unwrap(), 45);
        // a single even generator has vanishing square
        assert_eq!(free_level_dim(1, 0, -2).unwrap(), 0);
        // a single odd generator survives squaring
        assert_eq!(free_level_dim(0, 1, -2).unwrap(), 1);
        assert!(free_level_dim(1, 1, -4).is_err());
        // degree three over a purely odd space: d(d^2-1)/3
        assert_eq!(free_level_dim(0, 9, -3).unwrap(), 240);
        assert_eq!(free_level_dim(0, 2, -3).unwrap(), 2);
    }

    #[test]
    fn ktilde_counts() {
        assert_eq!(ktilde_span(4, 3).unwrap(), 16);
        assert_eq!(ktilde_span(3, 3).unwrap(), 3);
        assert_eq!(ktilde_span(5, 6).unwrap(), 0);
        assert!(ktilde_span(5, 2).is_err());
        for n in 3..=8usize {
            for p in 3..=n {
                assert_eq!(ktilde_span(n, p).unwrap(), n * crate::binomial(n, p));
            }
        }
    }

    #[test]
    fn generator_symbol_ranges() {
        assert!(GenSym::e(0).valid_for_rank(3));
        assert!(GenSym::f0(0).valid_for_rank(3));
        assert!(!GenSym::f0(1).valid_for_rank(3));
        assert!(!GenSym::f(0).valid_for_rank(3));
        assert!(!GenSym::e(4).valid_for_rank(3));
    }
}
