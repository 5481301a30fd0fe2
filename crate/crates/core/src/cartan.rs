//! Cartan matrices with a grey node, root systems of the finite simply-laced
//! algebras, Weyl reflections on weights, and Freudenthal weight
//! multiplicities.
//!
//! Two layers: [`SimpleAlgebra`] is a plain finite-dimensional simply-laced
//! algebra with its own node numbering 0..rank; [`GreyCartan`] is the extended
//! matrix B in which node 0 is the odd null ("grey") node attached to node 1
//! of the underlying algebra.

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat, SparseMat};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Series {
    A,
    D,
    E,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::D => 'D',
            Series::E => 'E',
        }
    }
}

/// Edges of the Dynkin diagram on nodes 1..=rank.
///
/// Conventions: the A chain is 1-2-...-r; D forks at node r-2 into r-1 and r;
/// E is the chain 1-...-(r-1) with node r attached to node r-3. In every
/// series node 1 is the node whose extension produces the next diagram of the
/// series, which is where the grey node attaches.
fn diagram_edges(series: Series, rank: usize) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::UnsupportedDiagram { series: series.letter(), rank };
    let mut edges = Vec::new();
    match series {
        Series::A => {
            if rank < 1 {
                return Err(bad());
            }
            for i in 1..rank {
                edges.push((i, i + 1));
            }
        }
        Series::D => {
            if rank < 3 {
                return Err(bad());
            }
            for i in 1..rank - 2 {
                edges.push((i, i + 1));
            }
            edges.push((rank - 2, rank - 1));
            edges.push((rank - 2, rank));
        }
        Series::E => {
            if !(4..=11).contains(&rank) {
                return Err(bad());
            }
            for i in 1..rank - 1 {
                edges.push((i, i + 1));
            }
            edges.push((rank - 3, rank));
        }
    }
    Ok(edges)
}

/// A finite-type (or, for E with rank >= 9, formally extended) simply-laced
/// algebra given by its Cartan matrix. Nodes are numbered 1..=rank here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleAlgebra {
    pub series: Series,
    pub rank: usize,
    /// Cartan matrix, indexed 0..rank internally (node i -> index i-1).
    pub cartan: Vec<Vec<i64>>,
}

impl SimpleAlgebra {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let edges = diagram_edges(series, rank)?;
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            cartan[i][i] = 2;
        }
        for (a, b) in edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        Ok(SimpleAlgebra { series, rank, cartan })
    }

    pub fn is_finite(&self) -> bool {
        match self.series {
            Series::A | Series::D => true,
            Series::E => self.rank <= 8,
        }
    }

    /// Inner product of two vectors in simple-root coordinates.
    pub fn inner_roots(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += x[i] * self.cartan[i][j] * y[j];
            }
        }
        acc
    }

    /// Pairing of a weight given by Dynkin labels with a root-coordinate vector.
    pub fn labels_dot_root(labels: &[i64], root: &[i64]) -> i64 {
        labels.iter().zip(root).map(|(l, a)| l * a).sum()
    }

    /// Dynkin labels of a root-coordinate vector.
    pub fn labels_of_root(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * root[j]).sum())
            .collect()
    }

    /// All positive roots in simple-root coordinates, sorted by height and
    /// then lexicographically. Uses the layer-by-layer closure: in a
    /// simply-laced finite algebra, root + simple root is a root exactly when
    /// their inner product is -1.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_finite() {
            return Err(Error::InfiniteRootSystem {
                series: self.series.letter(),
                rank: self.rank,
            });
        }
        let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut layer: BTreeSet<Vec<i64>> = BTreeSet::new();
        for i in 0..self.rank {
            let mut v = vec![0; self.rank];
            v[i] = 1;
            layer.insert(v);
        }
        while !layer.is_empty() {
            all.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for root in &layer {
                for i in 0..self.rank {
                    let mut simple = vec![0; self.rank];
                    simple[i] = 1;
                    if self.inner_roots(root, &simple) == -1 {
                        let mut sum = root.clone();
                        sum[i] += 1;
                        next.insert(sum);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Vec<i64>> = all.into_iter().collect();
        out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        Ok(out)
    }

    /// Highest root (the unique positive root of maximal height).
    pub fn highest_root(&self) -> Result<Vec<i64>> {
        Ok(self.positive_roots()?.last().cloned().expect("nonempty root system"))
    }

    fn inv_cartan(&self) -> Vec<Vec<Rat>> {
        let m = SparseMat::from_dense(
            &self
                .cartan
                .iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        let inv = linalg::inverse(&m).expect("Cartan matrix of a finite algebra is invertible");
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| inv.rows[i].get(j)).collect())
            .collect()
    }

    /// Inner product of two weights given by (rational) Dynkin labels.
    pub fn inner_labels(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let inv = self.inv_cartan();
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += &x[i] * &inv[i][j] * &y[j];
            }
        }
        acc
    }

    /// Weight system of the irreducible module with the given dominant
    /// highest weight: all weights as drops `k` with weight = highest - k.alpha,
    /// mapped to their Freudenthal multiplicities.
    pub fn weight_multiplicities(&self, highest: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        if highest.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: highest.len() });
        }
        if highest.iter().any(|&l| l < 0) {
            return Err(Error::NonDominantWeight {
                labels: highest.iter().map(|l| l.to_string()).collect(),
            });
        }
        let positive = self.positive_roots()?;

        // Generate the weight set layer by layer below the highest weight.
        // For a weight w and simple root a_i, the i-string through w reaches
        // q = p + (w, a_i) steps down, where p is the number of steps up.
        let mut weights: BTreeSet<Vec<i64>> = BTreeSet::new();
        weights.insert(vec![0; self.rank]);
        let mut layer: Vec<Vec<i64>> = vec![vec![0; self.rank]];
        while !layer.is_empty() {
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for k in &layer {
                let labels = self.drop_labels(highest, k);
                for i in 0..self.rank {
                    let mut p = 0i64;
                    let mut up = k.clone();
                    while up[i] > 0 {
                        up[i] -= 1;
                        if weights.contains(&up) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p + labels[i];
                    if q >= 1 {
                        let mut down = k.clone();
                        down[i] += 1;
                        if !weights.contains(&down) {
                            next.insert(down);
                        }
                    }
                }
            }
            layer = next.into_iter().collect();
            weights.extend(layer.iter().cloned());
        }

        // Freudenthal recursion, top-down by height of the drop.
        let mut by_height: Vec<Vec<i64>> = weights.iter().cloned().collect();
        by_height.sort_by_key(|k| (k.iter().sum::<i64>(), k.clone()));
        let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for k in by_height {
            let height: i64 = k.iter().sum();
            if height == 0 {
                mult.insert(k, 1);
                continue;
            }
            // denominator: (L+rho, L+rho) - (w+rho, w+rho) = 2(L+rho, d) - (d, d)
            // where d is the drop in root coordinates.
            let two_lrho_d: i64 = k.iter().zip(highest).map(|(ki, li)| ki * (li + 1)).sum();
            let d_d = self.inner_roots(&k, &k);
            let denom = 2 * two_lrho_d - d_d;
            let mut numer: i64 = 0;
            for alpha in &positive {
                let mut m = 1i64;
                loop {
                    let up: Vec<i64> = k
                        .iter()
                        .zip(alpha)
                        .map(|(ki, ai)| ki - m * ai)
                        .collect();
                    if up.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&mu) = mult.get(&up) {
                        // (w + m*alpha, alpha)
                        let w_alpha = Self::labels_dot_root(highest, alpha)
                            - self.inner_roots(&k, alpha)
                            + m * self.inner_roots(alpha, alpha);
                        numer += mu as i64 * w_alpha;
                    }
                    m += 1;
                }
            }
            let value = 2 * numer;
            assert!(denom > 0 && value % denom == 0, "Freudenthal division must be exact");
            mult.insert(k, (value / denom) as u64);
        }
        Ok(mult)
    }

    fn drop_labels(&self, highest: &[i64], k: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| highest[i] - (0..self.rank).map(|j| self.cartan[i][j] * k[j]).sum::<i64>())
            .collect()
    }

    /// Multiplicity of a single weight (by Dynkin labels) in R(highest).
    pub fn weight_multiplicity(&self, highest: &[i64], target: &[i64]) -> Result<u64> {
        let mults = self.weight_multiplicities(highest)?;
        Ok(self.lookup_target(highest, target, &mults))
    }

    fn lookup_target(
        &self,
        highest: &[i64],
        target: &[i64],
        mults: &BTreeMap<Vec<i64>, u64>,
    ) -> u64 {
        // Solve cartan . k = highest - target for an integer drop vector.
        let diff: Vec<Rat> = highest.iter().zip(target).map(|(h, t)| rat(h - t)).collect();
        let inv = self.inv_cartan();
        let mut k = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let mut acc = Rat::zero();
            for (i, d) in diff.iter().enumerate() {
                acc += &inv[j][i] * d;
            }
            if !acc.denom().is_one() || acc.is_negative() {
                return 0;
            }
            let v: i64 = acc.numer().try_into().expect("drop fits in i64");
            k.push(v);
        }
        mults.get(&k).copied().unwrap_or(0)
    }

    /// Dimension of R(highest) by the Weyl dimension formula.
    pub fn weyl_dim(&self, highest: &[i64]) -> Result<u64> {
        if highest.iter().any(|&l| l < 0) {
            return Err(Error::NonDominantWeight {
                labels: highest.iter().map(|l| l.to_string()).collect(),
            });
        }
        let mut acc = Rat::one();
        for alpha in &self.positive_roots()? {
            let num = Self::labels_dot_root(highest, alpha) + alpha.iter().sum::<i64>();
            let den: i64 = alpha.iter().sum();
            acc *= ratq(num, den);
        }
        assert!(acc.denom().is_one());
        Ok(acc.numer().try_into().expect("dimension fits in u64"))
    }
}

fn ratq(n: i64, d: i64) -> Rat {
    crate::linalg::ratq(n, d)
}

/// A weight of the grey-extended algebra, stored in simple-root coordinates
/// over alpha_0..alpha_r. Rational coefficients are allowed (Weyl vectors,
/// fundamental weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub alpha: Vec<Rat>,
}

impl Weight {
    pub fn from_root(coords: &[i64]) -> Self {
        Weight { alpha: coords.iter().map(|&c| rat(c)).collect() }
    }

    pub fn zero(r: usize) -> Self {
        Weight { alpha: vec![Rat::zero(); r + 1] }
    }

    pub fn simple(r: usize, a: usize) -> Self {
        let mut w = Weight::zero(r);
        w.alpha[a] = rat(1);
        w
    }

    /// Coefficient of alpha_0 (the grey level of the weight).
    pub fn grey_coeff(&self) -> Rat {
        self.alpha[0].clone()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight { alpha: self.alpha.iter().map(|a| a * c).collect() }
    }
}

/// The Cartan matrix of the grey-extended diagram: B_00 = 0,
/// B_01 = B_10 = -1, B_0i = 0 for i >= 2, and the underlying algebra's
/// Cartan matrix on indices 1..=r. Symmetric by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreyCartan {
    pub series: Series,
    pub r: usize,
    pub b: Vec<Vec<i64>>,
}

/// Build the extended Cartan matrix for the given series and rank.
pub fn build_cartan(series: Series, r: usize) -> Result<GreyCartan> {
    let ok = match series {
        Series::A => r >= 2,
        Series::D => r >= 4,
        Series::E => (4..=11).contains(&r),
    };
    if !ok {
        return Err(Error::UnsupportedDiagram { series: series.letter(), rank: r });
    }
    let inner = SimpleAlgebra::new(series, r)?;
    let mut b = vec![vec![0i64; r + 1]; r + 1];
    for i in 1..=r {
        for j in 1..=r {
            b[i][j] = inner.cartan[i - 1][j - 1];
        }
    }
    b[0][1] = -1;
    b[1][0] = -1;
    Ok(GreyCartan { series, r, b })
}

impl GreyCartan {
    /// The underlying algebra on nodes 1..=r.
    pub fn simple(&self) -> SimpleAlgebra {
        SimpleAlgebra::new(self.series, self.r).expect("validated at build time")
    }

    pub fn size(&self) -> usize {
        self.r + 1
    }

    /// Inner product of weights in alpha-coordinates: (x, y) = x^T B y.
    pub fn inner(&self, x: &Weight, y: &Weight) -> Result<Rat> {
        if x.alpha.len() != self.size() || y.alpha.len() != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: x.alpha.len().max(y.alpha.len()),
            });
        }
        let mut acc = Rat::zero();
        for (i, xi) in x.alpha.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.alpha.iter().enumerate() {
                if self.b[i][j] != 0 {
                    acc += xi * rat(self.b[i][j]) * yj;
                }
            }
        }
        Ok(acc)
    }

    pub fn inner_roots(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.size() {
            for j in 0..self.size() {
                acc += x[i] * self.b[i][j] * y[j];
            }
        }
        acc
    }

    /// Fundamental Weyl reflection w_i acting on a weight:
    /// w_i(x) = x - (x, alpha_i) alpha_i. There is no reflection in the null
    /// root, so i = 0 is rejected.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        if i == 0 || i > self.r {
            return Err(Error::BadReflectionIndex { index: i });
        }
        let alpha_i = Weight::simple(self.r, i);
        let c = self.inner(w, &alpha_i)?;
        Ok(w.add(&alpha_i.scale(&-c)))
    }

    pub fn reflect_root(&self, i: usize, root: &[i64]) -> Result<Vec<i64>> {
        let w = self.reflect(i, &Weight::from_root(root))?;
        Ok(w.alpha
            .iter()
            .map(|c| {
                assert!(c.denom().is_one());
                c.numer().try_into().expect("root coefficient fits in i64")
            })
            .collect())
    }

    /// Dynkin view of a weight: the grey coefficient k and the pairing labels
    /// (x, alpha_i) for i = 1..=r.
    pub fn dynkin_view(&self, w: &Weight) -> (Rat, Vec<Rat>) {
        let k = w.grey_coeff();
        let labels = (1..=self.r)
            .map(|i| self.inner(w, &Weight::simple(self.r, i)).expect("matching rank"))
            .collect();
        (k, labels)
    }

    pub fn as_mat(&self) -> SparseMat {
        SparseMat::from_dense(
            &self
                .b
                .iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }
}

/// Inverse of the extended A-series Cartan matrix B for W(n) (rank n-1,
/// matrix size n). Exists because det B = -det A' is nonzero.
pub fn inverse_cartan_b(n: usize) -> Result<Vec<Vec<Rat>>> {
    let grey = build_cartan(Series::A, n - 1)?;
    let inv = linalg::inverse(&grey.as_mat()).expect("B is non-degenerate");
    Ok((0..n).map(|i| (0..n).map(|j| inv.rows[i].get(j)).collect()).collect())
}

/// Length squared of a weight written as k times the grey fundamental weight
/// plus an underlying A_{n-1} weight with the given Dynkin labels:
/// -(n-1)/n k^2 + (mu, mu).
pub fn weight_norm(n: usize, k: &Rat, labels: &[Rat]) -> Result<Rat> {
    let simple = SimpleAlgebra::new(Series::A, n - 1)?;
    if labels.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, found: labels.len() });
    }
    let mu_mu = simple.inner_labels(labels, labels);
    Ok(-ratq((n - 1) as i64, n as i64) * k * k + mu_mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    #[test]
    fn extended_matrix_for_a2_matches_display() {
        let g = build_cartan(Series::A, 2).unwrap();
        assert_eq!(g.b, vec![vec![0, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
    }

    #[test]
    fn grey_diagonal_is_null_for_all_series() {
        for (s, r) in [(Series::A, 4), (Series::D, 5), (Series::E, 7)] {
            let g = build_cartan(s, r).unwrap();
            assert_eq!(g.b[0][0], 0);
            assert_eq!(g.b[0][1], -1);
            for i in 2..=r {
                assert_eq!(g.b[0][i], 0);
            }
            for i in 0..=r {
                for j in 0..=r {
                    assert_eq!(g.b[i][j], g.b[j][i]);
                }
            }
        }
    }

    #[test]
    fn det_b_is_minus_det_of_double_deletion() {
        for (s, r) in [
            (Series::A, 2),
            (Series::A, 5),
            (Series::D, 4),
            (Series::D, 6),
            (Series::E, 6),
            (Series::E, 8),
        ] {
            let g = build_cartan(s, r).unwrap();
            let b = g.as_mat();
            // delete rows/columns 0 and 1
            let sub: Vec<Vec<Rat>> = (2..=r)
                .map(|i| (2..=r).map(|j| rat(g.b[i][j])).collect())
                .collect();
            let sub = SparseMat::from_dense(&sub);
            assert_eq!(det(&b), -det(&sub), "failed for {}_{}", s.letter(), r);
        }
    }

    #[test]
    fn unsupported_diagrams_rejected() {
        assert!(build_cartan(Series::A, 1).is_err());
        assert!(build_cartan(Series::D, 3).is_err());
        assert!(build_cartan(Series::E, 3).is_err());
        assert!(build_cartan(Series::E, 12).is_err());
    }

    #[test]
    fn e4_and_e5_are_a4_and_d5() {
        // E_4 must be the A_4 diagram and E_5 the D_5 diagram, up to relabeling:
        // compare determinants and root counts.
        let e4 = SimpleAlgebra::new(Series::E, 4).unwrap();
        assert_eq!(e4.positive_roots().unwrap().len(), 10); // A_4
        let e5 = SimpleAlgebra::new(Series::E, 5).unwrap();
        assert_eq!(e5.positive_roots().unwrap().len(), 20); // D_5
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(SimpleAlgebra::new(Series::A, 2).unwrap().positive_roots().unwrap().len(), 3);
        assert_eq!(SimpleAlgebra::new(Series::A, 3).unwrap().positive_roots().unwrap().len(), 6);
        assert_eq!(SimpleAlgebra::new(Series::D, 4).unwrap().positive_roots().unwrap().len(), 12);
        assert_eq!(SimpleAlgebra::new(Series::E, 6).unwrap().positive_roots().unwrap().len(), 36);
        assert_eq!(SimpleAlgebra::new(Series::E, 8).unwrap().positive_roots().unwrap().len(), 120);
    }

    #[test]
    fn highest_root_of_a_series_has_full_height() {
        for m in 2..=5 {
            let alg = SimpleAlgebra::new(Series::A, m).unwrap();
            let theta = alg.highest_root().unwrap();
            assert_eq!(theta, vec![1; m]);
            assert_eq!(theta.iter().sum::<i64>(), m as i64);
        }
    }

    #[test]
    fn infinite_root_system_rejected() {
        let e9 = SimpleAlgebra::new(Series::E, 9).unwrap();
        assert!(matches!(e9.positive_roots(), Err(Error::InfiniteRootSystem { .. })));
    }

    #[test]
    fn inner_products_on_extended_weights() {
        let g = build_cartan(Series::A, 3).unwrap(); // n = 4
        let a0 = Weight::simple(3, 0);
        let a1 = Weight::simple(3, 1);
        let a2 = Weight::simple(3, 2);
        assert_eq!(g.inner(&a0, &a0).unwrap(), rat(0));
        assert_eq!(g.inner(&a1, &a2).unwrap(), rat(-1));
        assert_eq!(g.inner(&a1, &a1).unwrap(), rat(2));
    }

    /// The distinguished weight orthogonal to every alpha_i with grey
    /// coefficient one has length squared -(n-1)/n.
    #[test]
    fn grey_fundamental_weight_norm() {
        for n in 3..=6 {
            let g = build_cartan(Series::A, n - 1).unwrap();
            let simple = g.simple();
            let inv = simple.inv_cartan();
            let mut w = Weight::simple(n - 1, 0);
            for j in 1..n {
                w.alpha[j] = inv[j - 1][0].clone(); // solves (w, alpha_i) = 0
            }
            for i in 1..n {
                assert!(g.inner(&w, &Weight::simple(n - 1, i)).unwrap().is_zero());
            }
            assert_eq!(g.inner(&w, &w).unwrap(), -ratq((n - 1) as i64, n as i64));
            // consistency with the closed-form length
            assert_eq!(
                weight_norm(n, &rat(1), &vec![Rat::zero(); n - 1]).unwrap(),
                -ratq((n - 1) as i64, n as i64)
            );
        }
    }

    #[test]
    fn inverse_cartan_b_structure() {
        for n in 3..=6usize {
            let inv = inverse_cartan_b(n).unwrap();
            assert_eq!(inv[0][0], -ratq(n as i64, (n as i64) - 1));
            assert_eq!(inv[0][n - 1], -ratq(1, (n as i64) - 1));
            assert_eq!(inv[1][0], rat(-1));
            for j in 1..n {
                // second row and column vanish away from the (1,0)/(0,1) slots
                if j != 1 {
                    assert_eq!(inv[j][1], rat(0), "n={n} j={j}");
                }
            }
            // product with B is the identity
            let g = build_cartan(Series::A, n - 1).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Rat::zero();
                    for k in 0..n {
                        acc += rat(g.b[i][k]) * &inv[k][j];
                    }
                    assert_eq!(acc, if i == j { rat(1) } else { rat(0) });
                }
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let g = build_cartan(Series::A, 2).unwrap(); // n = 3
        // a weight orthogonal to alpha_i is fixed
        let mut w = Weight::zero(2);
        w.alpha[1] = rat(1);
        w.alpha[2] = rat(2); // (w, alpha_1) = 2 - 2 = 0
        assert_eq!(g.reflect(1, &w).unwrap(), w);
        // alpha_i reflects to its negative
        let a1 = Weight::simple(2, 1);
        assert_eq!(g.reflect(1, &a1).unwrap(), a1.scale(&rat(-1)));
        // w_1(alpha_0) = alpha_0 + alpha_1 since (alpha_0, alpha_1) = -1
        let a0 = Weight::simple(2, 0);
        let expect = a0.add(&Weight::simple(2, 1));
        assert_eq!(g.reflect(1, &a0).unwrap(), expect);
        assert!(g.reflect(0, &a0).is_err());
    }

    #[test]
    fn reflection_is_involution_and_preserves_inner() {
        let g = build_cartan(Series::A, 3).unwrap();
        let mut w1 = Weight::zero(3);
        w1.alpha = vec![rat(2), rat(-1), rat(3), rat(0)];
        let mut w2 = Weight::zero(3);
        w2.alpha = vec![rat(1), rat(1), rat(-2), rat(5)];
        for i in 1..=3 {
            let r1 = g.reflect(i, &w1).unwrap();
            let r2 = g.reflect(i, &w2).unwrap();
            assert_eq!(g.reflect(i, &r1).unwrap(), w1);
            assert_eq!(g.inner(&r1, &r2).unwrap(), g.inner(&w1, &w2).unwrap());
        }
    }

    #[test]
    fn weight_norm_examples() {
        // k = 0, mu = alpha_1: a root of length 2
        let n = 4;
        let alg = SimpleAlgebra::new(Series::A, n - 1).unwrap();
        let alpha1 = alg.labels_of_root(&[1, 0, 0]);
        let labels: Vec<Rat> = alpha1.iter().map(|&l| rat(l)).collect();
        assert_eq!(weight_norm(n, &rat(0), &labels).unwrap(), rat(2));
        // fundamental weight lengths (mu_k, mu_k) = k(n-k)/n
        for n in 3..=6usize {
            for k in 1..n {
                let mut labels = vec![Rat::zero(); n - 1];
                labels[k - 1] = rat(1);
                assert_eq!(
                    weight_norm(n, &rat(0), &labels).unwrap(),
                    ratq((k * (n - k)) as i64, n as i64)
                );
            }
        }
        // dominant weights at grey level -k have lengths k - k^2 and 2 + k - k^2
        for n in 4..=6usize {
            for k in 1..n - 1 {
                let mut mu_k = vec![Rat::zero(); n - 1];
                mu_k[k - 1] = rat(1);
                assert_eq!(
                    weight_norm(n, &rat(-(k as i64)), &mu_k).unwrap(),
                    rat((k as i64) - (k as i64).pow(2))
                );
                let mut mu_mix = vec![Rat::zero(); n - 1];
                mu_mix[k] += rat(1);
                mu_mix[n - 2] += rat(1);
                assert_eq!(
                    weight_norm(n, &rat(-(k as i64)), &mu_mix).unwrap(),
                    rat(2 + (k as i64) - (k as i64).pow(2))
                );
            }
        }
    }

    #[test]
    fn freudenthal_highest_weight_has_multiplicity_one() {
        let alg = SimpleAlgebra::new(Series::A, 3).unwrap();
        assert_eq!(alg.weight_multiplicity(&[1, 0, 1], &[1, 0, 1]).unwrap(), 1);
    }

    #[test]
    fn freudenthal_adjoint_of_a2() {
        // the adjoint (1,1) of A_2 has zero weight with multiplicity 2, dim 8
        let alg = SimpleAlgebra::new(Series::A, 2).unwrap();
        assert_eq!(alg.weight_multiplicity(&[1, 1], &[0, 0]).unwrap(), 2);
        let mults = alg.weight_multiplicities(&[1, 1]).unwrap();
        let total: u64 = mults.values().sum();
        assert_eq!(total, 8);
        assert_eq!(alg.weyl_dim(&[1, 1]).unwrap(), 8);
    }

    #[test]
    fn freudenthal_sum_matches_weyl_dimension() {
        let cases = [
            (Series::A, 3, vec![0, 1, 1]),
            (Series::A, 4, vec![0, 1, 0, 1]),
            (Series::A, 4, vec![2, 0, 0, 0]),
            (Series::D, 4, vec![1, 0, 0, 0]),
        ];
        for (s, r, hw) in cases {
            let alg = SimpleAlgebra::new(s, r).unwrap();
            let total: u64 = alg.weight_multiplicities(&hw).unwrap().values().sum();
            assert_eq!(total, alg.weyl_dim(&hw).unwrap(), "{}_{} {:?}", s.letter(), r, hw);
        }
    }

    #[test]
    fn freudenthal_multiplicities_are_weyl_invariant() {
        let alg = SimpleAlgebra::new(Series::A, 3).unwrap();
        let hw = [0, 1, 1];
        let mults = alg.weight_multiplicities(&hw).unwrap();
        for (k, &m) in &mults {
            let labels = alg.drop_labels(&hw, k);
            // reflect in each simple root: labels' = labels - labels_i * cartan row i
            for i in 0..3 {
                let refl: Vec<i64> = (0..3)
                    .map(|j| labels[j] - labels[i] * alg.cartan[i][j])
                    .collect();
                let m2 = alg.weight_multiplicity(&hw.to_vec(), &refl).unwrap();
                assert_eq!(m as u64, m2);
            }
        }
    }

    #[test]
    fn freudenthal_rejects_non_dominant() {
        let alg = SimpleAlgebra::new(Series::A, 2).unwrap();
        assert!(alg.weight_multiplicities(&[-1, 0]).is_err());
    }

    #[test]
    fn multiplicity_table_entries() {
        // multiplicity of (2,0,...,0) in the module (0,2,0,...,0,2):
        // (n-2)(n-1)/2 at n = 5, i.e. 6 for A_4
        let a4 = SimpleAlgebra::new(Series::A, 4).unwrap();
        let mut target = vec![0i64; 4];
        target[0] = 2;
        assert_eq!(a4.weight_multiplicity(&[0, 2, 0, 2], &target).unwrap(), 6);
        // multiplicity of (0,1,0,...,0) in (0,0,1,0,...,0,1): n-3 at n = 6
        let a5 = SimpleAlgebra::new(Series::A, 5).unwrap();
        assert_eq!(a5.weight_multiplicity(&[0, 0, 1, 0, 1], &[0, 1, 0, 0, 0]).unwrap(), 3);
    }
}
