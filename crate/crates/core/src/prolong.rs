//! Local superalgebras and the minimal graded extension of their negative
//! side (transitive prolongation).
//!
//! A local part stores the bracket tables among levels -1, 0, 1. Deeper
//! negative levels of the minimal algebra are computed one at a time: an
//! element of level -(k+1) is faithfully represented by its adjoint action
//! on level 1 (a map into level -k), because in the minimal algebra nothing
//! at negative level commutes with the whole of level 1. Each new level is
//! the span of the candidate maps
//!
//!     b(x, v): e |-> [[e, x], v] + (-1)^{|e||x|} [x, [e, v]]
//!
//! for x at level -1 and v at level -k, which is [e, [x, v]] rewritten by
//! the super-Jacobi identity.

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat, SparseMat, SparseVec};
use crate::sl1n::{SLBasis, SL1N};
use crate::walg::WAlgebra;
use std::collections::BTreeMap;

/// Bracket tables of a local Lie superalgebra g_{-1} + g_0 + g_1.
/// Every table entry is a coordinate vector over the target level's basis.
#[derive(Clone, Debug)]
pub struct LocalPart {
    pub dim1: usize,
    pub dim0: usize,
    pub dimm1: usize,
    pub parity1: u8,
    pub parity0: u8,
    pub paritym1: u8,
    /// [h_i, h_j] in g_0 coordinates
    pub t00: Vec<Vec<SparseVec>>,
    /// [h_i, e_j] in g_1 coordinates
    pub t01: Vec<Vec<SparseVec>>,
    /// [h_i, x_j] in g_{-1} coordinates
    pub t0m1: Vec<Vec<SparseVec>>,
    /// [e_i, x_j] in g_0 coordinates
    pub t1m1: Vec<Vec<SparseVec>>,
}

/// A level of a graded element space, with levels counted from -1 downwards.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub level: i64,
    pub dim: usize,
    pub parity: u8,
    /// [e_i, v_j]: coordinates in the component one level up
    /// (g_0 for the level -1 component).
    pub ad_up: Vec<Vec<SparseVec>>,
    /// [h_i, v_j]: g_0 action within the component.
    pub ad_g0: Vec<Vec<SparseVec>>,
    /// [x_i, w_j] for x at level -1 and w one level up, expressed in this
    /// component's basis. Empty for the level -1 component.
    pub pair_coords: Vec<Vec<SparseVec>>,
}

impl GradedComponent {
    /// No nonzero vector may be annihilated by every ad e. With elements
    /// stored as their adjoint maps this holds exactly when the flattened
    /// basis has full rank.
    pub fn is_transitive(&self, up_dim: usize) -> bool {
        if self.dim == 0 {
            return true;
        }
        let rows: Vec<SparseVec> = (0..self.dim)
            .map(|v| {
                SparseVec::from_entries(self.ad_up.iter().enumerate().flat_map(|(e, col)| {
                    col[v]
                        .iter()
                        .map(|(i, c)| (e * up_dim + i, c.clone()))
                        .collect::<Vec<_>>()
                }))
            })
            .collect();
        linalg::span_dim(&rows, self.ad_up.len() * up_dim).unwrap_or(0) == self.dim
    }
}

fn sign(p: u8, q: u8) -> Rat {
    if p & q & 1 == 1 {
        rat(-1)
    } else {
        rat(1)
    }
}

impl LocalPart {
    fn table_shape_ok(&self) -> bool {
        self.t00.len() == self.dim0
            && self.t00.iter().all(|r| r.len() == self.dim0)
            && self.t01.len() == self.dim0
            && self.t01.iter().all(|r| r.len() == self.dim1)
            && self.t0m1.len() == self.dim0
            && self.t0m1.iter().all(|r| r.len() == self.dimm1)
            && self.t1m1.len() == self.dim1
            && self.t1m1.iter().all(|r| r.len() == self.dimm1)
    }

    fn parity_of(&self, level: i64) -> u8 {
        match level {
            1 => self.parity1,
            0 => self.parity0,
            -1 => self.paritym1,
            _ => unreachable!(),
        }
    }

    /// Bracket of coordinate vectors at the given levels, where defined.
    fn br(&self, la: i64, va: &SparseVec, lb: i64, vb: &SparseVec) -> Result<(i64, SparseVec)> {
        let combine = |table: &Vec<Vec<SparseVec>>, va: &SparseVec, vb: &SparseVec| {
            let mut out = SparseVec::new();
            for (i, ci) in va.iter() {
                for (j, cj) in vb.iter() {
                    out.scaled_add(&(ci * cj), &table[i][j]);
                }
            }
            out
        };
        match (la, lb) {
            (0, 0) => Ok((0, combine(&self.t00, va, vb))),
            (0, 1) => Ok((1, combine(&self.t01, va, vb))),
            (0, -1) => Ok((-1, combine(&self.t0m1, va, vb))),
            (1, -1) => Ok((0, {
                let mut out = SparseVec::new();
                for (i, ci) in va.iter() {
                    for (j, cj) in vb.iter() {
                        out.scaled_add(&(ci * cj), &self.t1m1[i][j]);
                    }
                }
                out
            })),
            (1, 0) | (-1, 0) | (-1, 1) => {
                let (lv, v) = self.br(lb, vb, la, va)?;
                let s = -sign(self.parity_of(la), self.parity_of(lb));
                Ok((lv, v.scale(&s)))
            }
            _ => Err(Error::NonLocalBracket { levels: (la, lb) }),
        }
    }

    /// Check the super-Jacobi identity on every basis triple whose brackets
    /// all stay inside the local part. Reports the first offending triple.
    pub fn validate(&self) -> Result<()> {
        assert!(self.table_shape_ok(), "bracket tables have inconsistent shapes");
        let levels: [(i64, usize); 3] = [(1, self.dim1), (0, self.dim0), (-1, self.dimm1)];
        // one ordering per admissible level multiset
        let combos: [[i64; 3]; 4] = [[0, 0, 0], [1, 0, 0], [-1, 0, 0], [1, -1, 0]];
        for combo in combos {
            let dims: Vec<usize> = combo
                .iter()
                .map(|l| levels.iter().find(|(lv, _)| lv == l).unwrap().1)
                .collect();
            for a in 0..dims[0] {
                for b in 0..dims[1] {
                    for c in 0..dims[2] {
                        self.jacobi_triple(combo, [a, b, c])?;
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobi_triple(&self, levels: [i64; 3], idx: [usize; 3]) -> Result<()> {
        let vs: Vec<SparseVec> = idx.iter().map(|&i| SparseVec::unit(i)).collect();
        let (lx, x) = (levels[0], &vs[0]);
        let (ly, y) = (levels[1], &vs[1]);
        let (lz, z) = (levels[2], &vs[2]);
        let (lyz, yz) = self.br(ly, y, lz, z)?;
        let (l1, t1) = self.br(lx, x, lyz, &yz)?;
        let (lxy, xy) = self.br(lx, x, ly, y)?;
        let (_, t2) = self.br(lxy, &xy, lz, z)?;
        let (lxz, xz) = self.br(lx, x, lz, z)?;
        let (_, t3) = self.br(ly, y, lxz, &xz)?;
        let s = sign(self.parity_of(lx), self.parity_of(ly));
        let mut res = t1.clone();
        res.scaled_add(&rat(-1), &t2);
        res.scaled_add(&-s, &t3);
        let _ = l1;
        if !res.is_zero() {
            return Err(Error::JacobiFailure {
                triple: format!(
                    "levels ({},{},{}) indices ({},{},{})",
                    levels[0], levels[1], levels[2], idx[0], idx[1], idx[2]
                ),
            });
        }
        Ok(())
    }

    /// Random-basis variants used to confirm basis independence of the
    /// prolongation: replace the level +-1 bases by p1 and pm1 (rows =
    /// new basis vectors in old coordinates).
    pub fn change_basis(&self, p1: &SparseMat, pm1: &SparseMat) -> Result<LocalPart> {
        let p1_inv_t = transpose_inverse(p1)?;
        let pm1_inv_t = transpose_inverse(pm1)?;
        let to_new = |v: &SparseVec, inv_t: &SparseMat| inv_t.apply(v);
        let mut out = self.clone();
        // [h, e'_j] = sum_k p1[j][k] [h, e_k], re-expressed in the new basis
        out.t01 = (0..self.dim0)
            .map(|h| {
                (0..self.dim1)
                    .map(|j| {
                        let mut acc = SparseVec::new();
                        for (k, c) in p1.rows[j].iter() {
                            acc.scaled_add(c, &self.t01[h][k]);
                        }
                        to_new(&acc, &p1_inv_t)
                    })
                    .collect()
            })
            .collect();
        out.t0m1 = (0..self.dim0)
            .map(|h| {
                (0..self.dimm1)
                    .map(|j| {
                        let mut acc = SparseVec::new();
                        for (k, c) in pm1.rows[j].iter() {
                            acc.scaled_add(c, &self.t0m1[h][k]);
                        }
                        to_new(&acc, &pm1_inv_t)
                    })
                    .collect()
            })
            .collect();
        out.t1m1 = (0..self.dim1)
            .map(|i| {
                (0..self.dimm1)
                    .map(|j| {
                        let mut acc = SparseVec::new();
                        for (k1, c1) in p1.rows[i].iter() {
                            for (k2, c2) in pm1.rows[j].iter() {
                                acc.scaled_add(&(c1 * c2), &self.t1m1[k1][k2]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(out)
    }
}

fn transpose_inverse(p: &SparseMat) -> Result<SparseMat> {
    let n = p.nrows();
    let mut cols = vec![SparseVec::new(); n];
    for (i, row) in p.rows.iter().enumerate() {
        for (j, c) in row.iter() {
            cols[j].set(i, c.clone());
        }
    }
    linalg::inverse(&SparseMat::new(cols, n))
        .ok_or(Error::OutOfRange { what: "singular change of basis", value: 0 })
}

/// Compute levels -1 down to -depth of the minimal graded algebra over the
/// local part. Dimensions drop to zero and stay there once the negative side
/// terminates.
pub fn minimal_prolongation(local: &LocalPart, depth: usize) -> Result<Vec<GradedComponent>> {
    local.validate()?;
    assert_eq!(local.parity0 & 1, 0, "level zero of a consistent grading is even");
    let mut components: Vec<GradedComponent> = Vec::new();

    let first = GradedComponent {
        level: -1,
        dim: local.dimm1,
        parity: local.paritym1,
        ad_up: local.t1m1.clone(),
        ad_g0: local.t0m1.clone(),
        pair_coords: Vec::new(),
    };
    components.push(first);

    for k in 1..depth {
        let prev_up_dim = if k == 1 {
            local.dim0
        } else {
            components[k - 2].dim
        };
        let next = prolong_once(local, &components, k, prev_up_dim)?;
        components.push(next);
    }
    Ok(components)
}

/// One prolongation step: from the component at level -k (index k-1 in
/// `components`) to level -(k+1).
fn prolong_once(
    local: &LocalPart,
    components: &[GradedComponent],
    k: usize,
    up_dim: usize,
) -> Result<GradedComponent> {
    let cur = &components[k - 1];
    let d1 = local.dim1;
    let dm1 = local.dimm1;
    let flat_len = d1 * cur.dim;
    let sgn_ex = sign(local.parity1, local.paritym1);

    // [x, w] for x at level -1 and w one level above the current component.
    let bracket_into_cur = |x: usize, w: &SparseVec| -> SparseVec {
        let mut acc = SparseVec::new();
        if k == 1 {
            // w lives in g_0: [x, h] = -(-1)^{|x||h|}[h, x]
            for (h, c) in w.iter() {
                acc.scaled_add(&(c * -sign(local.paritym1, local.parity0)), &local.t0m1[h][x]);
            }
        } else {
            for (j, c) in w.iter() {
                acc.scaled_add(c, &cur.pair_coords[x][j]);
            }
        }
        acc
    };

    // candidate map for the pair (x, v): e |-> [[e,x],v] + s [x,[e,v]]
    let mut candidates: Vec<Vec<SparseVec>> = Vec::with_capacity(dm1 * cur.dim);
    for x in 0..dm1 {
        for v in 0..cur.dim {
            let mut blocks: Vec<SparseVec> = Vec::with_capacity(d1);
            for e in 0..d1 {
                let mut m_e = SparseVec::new();
                // [[e, x], v] with [e, x] in g_0 coordinates
                for (h, c) in local.t1m1[e][x].iter() {
                    m_e.scaled_add(c, &cur.ad_g0[h][v]);
                }
                // s * [x, [e, v]]
                let ev = &cur.ad_up[e][v];
                let xev = bracket_into_cur(x, ev);
                m_e.scaled_add(&sgn_ex, &xev);
                blocks.push(m_e);
            }
            candidates.push(blocks);
        }
    }

    let flatten = |blocks: &[SparseVec]| -> SparseVec {
        SparseVec::from_entries(blocks.iter().enumerate().flat_map(|(e, b)| {
            b.iter().map(|(i, c)| (e * cur.dim + i, c.clone())).collect::<Vec<_>>()
        }))
    };

    let flat: Vec<SparseVec> = candidates.iter().map(|b| flatten(b)).collect();
    let reduced = linalg::rref(&SparseMat::new(flat.clone(), flat_len));
    let dim = reduced.rank();

    // coordinates of every candidate pair in the new basis
    let mut pair_coords: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); cur.dim]; dm1];
    for (idx, f) in flat.iter().enumerate() {
        let coords = reduced
            .coords(f)
            .expect("candidate lies in the span of all candidates");
        pair_coords[idx / cur.dim][idx % cur.dim] =
            SparseVec::from_entries(coords.into_iter().enumerate().map(|(i, c)| (i, c)));
    }

    // ad_up of the new basis: the e-blocks of the reduced rows
    let unflatten = |row: &SparseVec| -> Vec<SparseVec> {
        let mut blocks = vec![SparseVec::new(); d1];
        for (i, c) in row.iter() {
            blocks[i / cur.dim].set(i % cur.dim, c.clone());
        }
        blocks
    };
    let mut ad_up: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); dim]; d1];
    for (w, row) in reduced.mat.rows.iter().enumerate() {
        for (e, b) in unflatten(row).into_iter().enumerate() {
            ad_up[e][w] = b;
        }
    }

    // g_0 action: (h.m)(e) = [h, m(e)] - m([h, e])
    let mut ad_g0: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); dim]; local.dim0];
    for h in 0..local.dim0 {
        for (w, row) in reduced.mat.rows.iter().enumerate() {
            let blocks = unflatten(row);
            let mut new_blocks: Vec<SparseVec> = Vec::with_capacity(d1);
            for e in 0..d1 {
                let mut out = SparseVec::new();
                for (i, c) in blocks[e].iter() {
                    out.scaled_add(c, &cur.ad_g0[h][i]);
                }
                for (e2, c) in local.t01[h][e].iter() {
                    out.scaled_add(&-c.clone(), &blocks[e2]);
                }
                new_blocks.push(out);
            }
            let f = flatten(&new_blocks);
            let coords = reduced.coords(&f).ok_or(Error::JacobiFailure {
                triple: format!("g_0 action leaves level {} span", -(k as i64 + 1)),
            })?;
            ad_g0[h][w] =
                SparseVec::from_entries(coords.into_iter().enumerate().map(|(i, c)| (i, c)));
        }
    }

    let _ = up_dim;
    Ok(GradedComponent {
        level: -(k as i64) - 1,
        dim,
        parity: (cur.parity + local.paritym1) % 2,
        ad_up,
        ad_g0,
        pair_coords,
    })
}

/// The local part of W(n): levels 1, 0, -1 with the structure-constant
/// bracket.
pub fn local_part_w(n: usize) -> Result<LocalPart> {
    let alg = WAlgebra::new(n)?;
    let b1 = alg.basis_at_level(1);
    let b0 = alg.basis_at_level(0);
    let bm1 = alg.basis_at_level(-1);
    let idx1 = alg.level_index(1);
    let idx0 = alg.level_index(0);
    let idxm1 = alg.level_index(-1);
    let table = |xs: &[crate::walg::WBasisElement],
                 ys: &[crate::walg::WBasisElement],
                 target: &BTreeMap<crate::walg::WBasisElement, usize>| {
        xs.iter()
            .map(|x| ys.iter().map(|y| alg.bracket_basis(x, y).to_sparse(target)).collect())
            .collect()
    };
    Ok(LocalPart {
        dim1: b1.len(),
        dim0: b0.len(),
        dimm1: bm1.len(),
        parity1: 1,
        parity0: 0,
        paritym1: 1,
        t00: table(&b0, &b0, &idx0),
        t01: table(&b0, &b1, &idx1),
        t0m1: table(&b0, &bm1, &idxm1),
        t1m1: table(&b1, &bm1, &idx0),
    })
}

/// The local part of the 3-graded basic superalgebra sl(1|n).
pub fn local_part_sl1n(n: usize) -> LocalPart {
    let alg = SL1N::new(n);
    let b1: Vec<SLBasis> = (0..n).map(SLBasis::E).collect();
    let mut b0: Vec<SLBasis> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            b0.push(SLBasis::G(a, b));
        }
    }
    let bm1: Vec<SLBasis> = (0..n).map(SLBasis::F).collect();
    let pos = |b: &SLBasis| -> usize {
        match *b {
            SLBasis::E(a) => a,
            SLBasis::G(a, c) => a * n + c,
            SLBasis::F(a) => a,
        }
    };
    let to_vec = |e: &crate::sl1n::SLElement| {
        SparseVec::from_entries(e.iter().map(|(b, c)| (pos(b), c.clone())))
    };
    let table = |xs: &[SLBasis], ys: &[SLBasis]| -> Vec<Vec<SparseVec>> {
        xs.iter()
            .map(|x| ys.iter().map(|y| to_vec(&alg.bracket_basis(x, y))).collect())
            .collect()
    };
    LocalPart {
        dim1: n,
        dim0: n * n,
        dimm1: n,
        parity1: 1,
        parity0: 0,
        paritym1: 1,
        t00: table(&b0, &b0),
        t01: table(&b0, &b1),
        t0m1: table(&b0, &bm1),
        t1m1: table(&b1, &bm1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial;

    #[test]
    fn three_graded_algebra_collapses() {
        // the minimal algebra over the local part of sl(1|n) has nothing
        // below level -1; this also pins the super-sign in the candidates
        for n in 2..=3 {
            let local = local_part_sl1n(n);
            let comps = minimal_prolongation(&local, 3).unwrap();
            assert_eq!(comps[0].dim, n);
            assert_eq!(comps[1].dim, 0);
            assert_eq!(comps[2].dim, 0);
        }
    }

    #[test]
    fn w3_prolongation_matches_level_dimensions() {
        let local = local_part_w(3).unwrap();
        let comps = minimal_prolongation(&local, 2).unwrap();
        assert_eq!(comps[0].dim, 9);
        assert_eq!(comps[1].dim, 3);
        // depth 1 echoes the local dimension
        let echo = minimal_prolongation(&local, 1).unwrap();
        assert_eq!(echo.len(), 1);
        assert_eq!(echo[0].dim, 9);
    }

    #[test]
    fn w4_prolongation_and_transitivity() {
        let local = local_part_w(4).unwrap();
        let comps = minimal_prolongation(&local, 3).unwrap();
        let expect: Vec<usize> = (2..=4).map(|p| 4 * binomial(4, p)).collect();
        assert_eq!(comps.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![24, 16, 4]);
        assert_eq!(comps.iter().map(|c| c.dim).collect::<Vec<_>>(), expect);
        // transitivity: the joint kernel of the level +1 action vanishes
        let mut up = local.dim0;
        for c in &comps {
            assert!(c.is_transitive(up));
            up = c.dim;
        }
        // a level below the last nonzero one stays zero
        let deeper = minimal_prolongation(&local, 5).unwrap();
        assert_eq!(deeper[4].dim, 0);
    }

    #[test]
    fn prolongation_dimensions_are_basis_independent() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(90125);
        let local = local_part_w(3).unwrap();
        let mut random_invertible = |d: usize| loop {
            let rows: Vec<SparseVec> = (0..d)
                .map(|_| {
                    SparseVec::from_entries(
                        (0..d).map(|j| (j, rat(rng.gen_range(-2..=2)))),
                    )
                })
                .collect();
            let m = SparseMat::new(rows, d);
            if linalg::rref(&m).rank() == d {
                return m;
            }
        };
        let p1 = random_invertible(local.dim1);
        let pm1 = random_invertible(local.dimm1);
        let twisted = local.change_basis(&p1, &pm1).unwrap();
        twisted.validate().unwrap();
        let a = minimal_prolongation(&local, 3).unwrap();
        let b = minimal_prolongation(&twisted, 3).unwrap();
        for (ca, cb) in a.iter().zip(&b) {
            assert_eq!(ca.dim, cb.dim);
        }
    }

    #[test]
    fn validate_catches_broken_tables() {
        let mut local = local_part_sl1n(2);
        // corrupt one entry of [e, x]
        local.t1m1[0][1] = SparseVec::unit(0);
        assert!(matches!(local.validate(), Err(Error::JacobiFailure { .. })));
    }

    #[test]
    fn parities_propagate_down_the_levels() {
        let local = local_part_w(3).unwrap();
        let comps = minimal_prolongation(&local, 2).unwrap();
        assert_eq!(comps[0].parity, 1);
        assert_eq!(comps[1].parity, 0);
    }
}
