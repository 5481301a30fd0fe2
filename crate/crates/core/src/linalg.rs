//! Exact rational scalars and sparse linear algebra.
//!
//! All other modules sit on top of this one. Matrices are row-major lists of
//! sparse vectors; elimination is fraction-free over the integers with
//! per-row content reduction to bound coefficient growth, and the final
//! reduced row-echelon form is normalized to leading ones.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The scalar field: arbitrary-precision rationals, always reduced, with
/// positive denominator. Zero is 0/1.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn ratq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Format a rational as `p/q`, or bare `p` when the denominator is one.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sparse vector: index -> nonzero rational entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rat>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, Rat)>>(it: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in it {
            v.add_to(i, &c);
        }
        v
    }

    pub fn from_dense(row: &[Rat]) -> Self {
        SparseVec::from_entries(row.iter().enumerate().map(|(i, c)| (i, c.clone())))
    }

    pub fn unit(i: usize) -> Self {
        SparseVec::from_entries([(i, rat(1))])
    }

    pub fn get(&self, i: usize) -> Rat {
        self.entries.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, c: Rat) {
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn add_to(&mut self, i: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let cur = self.entries.entry(i).or_insert_with(Rat::zero);
        *cur += c;
        if cur.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Smallest index with a nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn scaled_add(&mut self, c: &Rat, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_to(i, &(x * c));
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        let (small, big) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = Rat::zero();
        for (i, x) in small.iter() {
            if let Some(y) = big.entries.get(&i) {
                acc += x * y;
            }
        }
        acc
    }

    /// Scale so that all entries are coprime integers and the leading entry
    /// is positive. A no-op on the zero vector.
    pub fn normalize_content(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::one();
        for c in self.entries.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.entries.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let lead_neg = self.entries.values().next().unwrap().is_negative();
        let mut factor = Rat::new(den_lcm, num_gcd);
        if lead_neg {
            factor = -factor;
        }
        for c in self.entries.values_mut() {
            *c *= &factor;
        }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.iter().map(|(i, c)| format!("{}:{}", i, fmt_rat(c))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Sparse matrix: a list of sparse rows with a declared column count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: Vec<SparseVec>,
    pub ncols: usize,
}

impl SparseMat {
    pub fn new(rows: Vec<SparseVec>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < ncols)));
        SparseMat { rows, ncols }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { rows: vec![SparseVec::new(); nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            rows: (0..n).map(SparseVec::unit).collect(),
            ncols: n,
        }
    }

    pub fn from_dense(data: &[Vec<Rat>]) -> Self {
        let ncols = data.iter().map(|r| r.len()).max().unwrap_or(0);
        SparseMat {
            rows: data.iter().map(|r| SparseVec::from_dense(r)).collect(),
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(
            self.rows.iter().enumerate().map(|(i, row)| (i, row.dot(v))),
        )
    }
}

/// Result of `rref`: the reduced row-echelon form (zero rows dropped) and the
/// pivot columns in increasing order. The rank is the number of pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub mat: SparseMat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `v` in the row basis, or None if `v` is outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Rat>> {
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut rem = v.clone();
        for (c, row) in coords.iter().zip(&self.mat.rows) {
            rem.scaled_add(&-c, row);
        }
        if rem.is_zero() {
            Some(coords)
        } else {
            None
        }
    }
}

/// Reduced row-echelon form by fraction-free elimination.
///
/// Pivot choice: first nonzero column, then the candidate row whose (integer,
/// content-reduced) leading entry has the smallest absolute numerator, ties by
/// row order. The output is deterministic for a given input.
pub fn rref(m: &SparseMat) -> Rref {
    let mut work: Vec<SparseVec> = m
        .rows
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .map(|mut r| {
            r.normalize_content();
            r
        })
        .collect();
    let mut done: Vec<SparseVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();

    while !work.is_empty() {
        let col = work.iter().filter_map(|r| r.leading_index()).min().unwrap();
        let mut best: Option<usize> = None;
        for (i, r) in work.iter().enumerate() {
            if r.leading_index() == Some(col) {
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        let cur = work[b].get(col);
                        let cand = r.get(col);
                        if cand.numer().abs() < cur.numer().abs() {
                            best = Some(i);
                        }
                    }
                }
            }
        }
        let pivot_row = work.remove(best.unwrap());
        let lead = pivot_row.get(col);
        for r in work.iter_mut() {
            let c = r.get(col);
            if !c.is_zero() {
                // r <- lead*r - c*pivot  (fraction-free step on integer rows)
                let mut nr = r.scale(&lead);
                nr.scaled_add(&-c, &pivot_row);
                nr.normalize_content();
                *r = nr;
            }
        }
        work.retain(|r| !r.is_zero());
        done.push(pivot_row);
        pivots.push(col);
    }

    // Back-eliminate above each pivot and scale pivots to one.
    for j in (0..done.len()).rev() {
        let col = pivots[j];
        let inv = rat(1) / done[j].get(col);
        done[j] = done[j].scale(&inv);
        let pivot_row = done[j].clone();
        for i in 0..j {
            let c = done[i].get(col);
            if !c.is_zero() {
                done[i].scaled_add(&-c, &pivot_row);
            }
        }
    }

    Rref { mat: SparseMat::new(done, m.ncols), pivots }
}

/// Basis of the right null space: m . v = 0 for each returned vector.
pub fn kernel_basis(m: &SparseMat) -> Vec<SparseVec> {
    let r = rref(m);
    let pivot_set: std::collections::BTreeSet<usize> = r.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..m.ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = SparseVec::unit(free);
        for (row, &p) in r.mat.rows.iter().zip(&r.pivots) {
            let c = row.get(free);
            if !c.is_zero() {
                v.set(p, -c);
            }
        }
        basis.push(v);
    }
    basis
}

/// Dimension of the span of the given vectors; 0 for empty input.
/// All vectors must fit in the ambient dimension `ncols`.
pub fn span_dim(vectors: &[SparseVec], ncols: usize) -> Result<usize> {
    for v in vectors {
        if let Some(m) = v.max_index() {
            if m >= ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: m + 1 });
            }
        }
    }
    Ok(rref(&SparseMat::new(vectors.to_vec(), ncols)).rank())
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Rows are kept with distinct pivot columns, leading entry one, and zeros
/// above and below every pivot, so membership tests are a single reduction.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        SpanBuilder::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduce `v` by the current rows; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut rem = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = rem.get(p);
            if !c.is_zero() {
                rem.scaled_add(&-c, row);
            }
        }
        rem
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add a vector to the span. Returns true if the dimension grew.
    pub fn add(&mut self, v: &SparseVec) -> bool {
        let mut rem = self.reduce(v);
        let Some(lead) = rem.leading_index() else {
            return false;
        };
        let inv = rat(1) / rem.get(lead);
        rem = rem.scale(&inv);
        for row in self.rows.iter_mut() {
            let c = row.get(lead);
            if !c.is_zero() {
                row.scaled_add(&-c, &rem);
            }
        }
        let pos = self.pivots.binary_search(&lead).unwrap_err();
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, rem);
        true
    }
}

/// Determinant of a square matrix by rational Gaussian elimination.
pub fn det(m: &SparseMat) -> Rat {
    let n = m.nrows();
    assert_eq!(n, m.ncols, "determinant of a non-square matrix");
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| m.rows[i].get(j)).collect())
        .collect();
    let mut acc = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            rows.swap(p, col);
            acc = -acc;
        }
        let lead = rows[col][col].clone();
        acc *= &lead;
        for i in col + 1..n {
            let factor = &rows[i][col] / &lead;
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let sub = &factor * &rows[col][j];
                rows[i][j] -= sub;
            }
        }
    }
    acc
}

/// Inverse of a square matrix, or None if singular.
pub fn inverse(m: &SparseMat) -> Option<SparseMat> {
    let n = m.nrows();
    if n != m.ncols {
        return None;
    }
    let augmented: Vec<SparseVec> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.set(n + i, rat(1));
            r
        })
        .collect();
    let r = rref(&SparseMat::new(augmented, 2 * n));
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    let rows = r
        .mat
        .rows
        .iter()
        .map(|row| SparseVec::from_entries(row.iter().filter(|(i, _)| *i >= n).map(|(i, c)| (i - n, c.clone()))))
        .collect();
    Some(SparseMat::new(rows, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(data: &[&[i64]]) -> SparseMat {
        SparseMat::from_dense(
            &data
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = SparseMat::identity(3);
        let r = rref(&m);
        assert_eq!(r.mat, m);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = SparseMat::zero(2, 3);
        let r = rref(&m);
        assert_eq!(r.rank(), 0);
        assert!(r.mat.rows.is_empty());
    }

    #[test]
    fn rref_proportional_rows_rank_one() {
        // rows (1,2) and (2,4): hand elimination leaves a single row.
        let r = rref(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank(), 1);
        assert_eq!(r.mat.rows[0], SparseVec::from_dense(&[rat(1), rat(2)]));
    }

    #[test]
    fn rref_is_idempotent() {
        let m = mat(&[&[2, 4, 1], &[3, 1, 0], &[5, 5, 1], &[0, 7, 2]]);
        let r1 = rref(&m);
        let r2 = rref(&r1.mat);
        assert_eq!(r1.mat, r2.mat);
        assert_eq!(r1.pivots, r2.pivots);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel_basis(&SparseMat::identity(4)).is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let basis = kernel_basis(&SparseMat::zero(2, 3));
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn kernel_of_single_row_solved_by_hand() {
        // x0 + x1 = 0 in three unknowns: kernel is 2-dimensional, e.g.
        // (-1, 1, 0) and (0, 0, 1).
        let m = mat(&[&[1, 1, 0]]);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn rank_nullity_on_small_matrix() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = rref(&m).rank();
        let k = kernel_basis(&m).len();
        assert_eq!(r + k, m.ncols);
    }

    #[test]
    fn span_dim_examples() {
        assert_eq!(span_dim(&[], 5).unwrap(), 0);
        let v = SparseVec::from_dense(&[rat(1), rat(3)]);
        assert_eq!(span_dim(&[v.clone(), v.scale(&rat(2))], 2).unwrap(), 1);
        // three generic vectors in dimension 2 span the whole plane
        let vs = [
            SparseVec::from_dense(&[rat(1), rat(1)]),
            SparseVec::from_dense(&[rat(1), rat(2)]),
            SparseVec::from_dense(&[rat(3), rat(5)]),
        ];
        assert_eq!(span_dim(&vs, 2).unwrap(), 2);
    }

    #[test]
    fn span_dim_dimension_mismatch() {
        let v = SparseVec::unit(7);
        assert!(span_dim(&[v], 3).is_err());
    }

    #[test]
    fn span_dim_invariant_under_permutation_and_scaling() {
        let a = SparseVec::from_dense(&[rat(1), rat(2), rat(0)]);
        let b = SparseVec::from_dense(&[rat(0), rat(1), rat(4)]);
        let c = SparseVec::from_dense(&[rat(1), rat(3), rat(4)]);
        let d1 = span_dim(&[a.clone(), b.clone(), c.clone()], 3).unwrap();
        let d2 = span_dim(&[c.scale(&ratq(-7, 3)), a.scale(&rat(5)), b], 3).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn span_builder_matches_rref_rank() {
        let rows = [
            SparseVec::from_dense(&[rat(1), rat(2), rat(3), rat(4)]),
            SparseVec::from_dense(&[rat(2), rat(4), rat(6), rat(8)]),
            SparseVec::from_dense(&[rat(0), rat(1), rat(0), rat(1)]),
            SparseVec::from_dense(&[rat(1), rat(3), rat(3), rat(5)]),
        ];
        let mut sb = SpanBuilder::new();
        for v in &rows {
            sb.add(v);
        }
        assert_eq!(sb.dim(), span_dim(&rows, 4).unwrap());
        assert!(sb.contains(&rows[3]));
        assert!(!sb.contains(&SparseVec::unit(2)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat(&[&[2, 1, 0], &[1, 1, 1], &[0, 3, 1]]);
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            let e = SparseVec::unit(i);
            let back = m.apply(&inv.apply(&e));
            assert_eq!(back, e);
        }
        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn rref_coords_solves_membership() {
        let m = mat(&[&[1, 0, 2], &[0, 1, 1]]);
        let r = rref(&m);
        let v = SparseVec::from_dense(&[rat(3), rat(2), rat(8)]);
        let coords = r.coords(&v).unwrap();
        assert_eq!(coords, vec![rat(3), rat(2)]);
        let outside = SparseVec::from_dense(&[rat(0), rat(0), rat(1)]);
        assert!(r.coords(&outside).is_none());
    }
}
