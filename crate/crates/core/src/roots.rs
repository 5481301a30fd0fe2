//! Root-space decomposition of W(n) and S(n) with respect to the enlarged
//! Cartan subalgebra spanned by h_0..h_{n-1}, multiplicities and lengths,
//! the Weyl-group automorphisms of the presentation, and table emission.

use crate::cartan::{build_cartan, GreyCartan, Series, SimpleAlgebra, Weight};
use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat, SparseMat, SparseVec};
use crate::presentation::{
    evaluate, f0_indices, h_consistency_relations, ideal_relations, relation_set,
    chevalley_assignment, Expr, GenSym, Leaf, Relation, Word,
};
use crate::report::{Cell, Check, SuiteReport, Table};
use crate::walg::WAlgebra;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    W,
    S,
}

/// A root of the decomposition: coordinates over alpha_0..alpha_{n-1},
/// level, multiplicity and exact length squared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEntry {
    pub level: i64,
    pub root: Vec<i64>,
    pub mult: usize,
    pub length_sq: Rat,
}

/// Simultaneous eigenspace decomposition of the full algebra under
/// ad h_0..h_{n-1}, by iterated exact kernel splitting in a fixed order.
/// The Cartan subalgebra (the zero-weight space at level zero) is excluded.
pub fn root_decomposition(kind: AlgebraKind, n: usize) -> Result<Vec<RootEntry>> {
    if !(3..=6).contains(&n) {
        return Err(Error::OutOfRange { what: "root decomposition rank n", value: n as i64 });
    }
    let alg = WAlgebra::new(n)?;
    let grey = build_cartan(Series::A, n - 1)?;
    let b_inv = linalg::inverse(&grey.as_mat()).expect("non-degenerate extended matrix");
    let h: Vec<_> = (0..n).map(|a| alg.h(a)).collect();

    let mut out = Vec::new();
    for level in (1 - n as i64..=1).rev() {
        let ambient = alg.basis_at_level(level);
        if ambient.is_empty() {
            continue;
        }
        let index = alg.level_index(level);
        // the subspace to decompose, as reduced rows over the ambient basis
        let start: Vec<SparseVec> = match kind {
            AlgebraKind::W => (0..ambient.len()).map(SparseVec::unit).collect(),
            AlgebraKind::S => {
                let vecs: Vec<SparseVec> = alg
                    .s_spanning_set(level)
                    .iter()
                    .map(|e| e.to_sparse(&index))
                    .collect();
                linalg::rref(&SparseMat::new(vecs, ambient.len())).mat.rows
            }
        };
        if start.is_empty() {
            continue;
        }

        // ambient action of each h as a column map basis |-> vector
        let h_action: Vec<Vec<SparseVec>> = h
            .iter()
            .map(|ha| {
                ambient
                    .iter()
                    .map(|b| alg.bracket(ha, &crate::walg::WElement::basis(n, *b)).to_sparse(&index))
                    .collect()
            })
            .collect();

        let mut spaces: Vec<(Vec<Rat>, Vec<SparseVec>)> = vec![(Vec::new(), start)];
        for action in &h_action {
            let mut next = Vec::new();
            for (tags, basis) in spaces {
                let split = split_eigenspaces(&basis, action, level)?;
                for (lambda, sub) in split {
                    let mut t = tags.clone();
                    t.push(lambda);
                    next.push((t, sub));
                }
            }
            spaces = next;
        }

        for (tags, basis) in spaces {
            // root coordinates from the eigenvalue vector
            let lam = SparseVec::from_entries(
                tags.iter().enumerate().map(|(i, c)| (i, c.clone())),
            );
            let coords = b_inv.apply(&lam);
            let mut root = vec![0i64; n];
            let mut is_zero = true;
            for (i, c) in coords.iter() {
                assert!(c.denom().is_one(), "root coordinates must be integral");
                root[i] = c.numer().try_into().expect("root coordinate fits in i64");
                if root[i] != 0 {
                    is_zero = false;
                }
            }
            if is_zero {
                // the zero-weight space at level zero is the Cartan subalgebra
                assert_eq!(level, 0);
                assert_eq!(basis.len(), match kind {
                    AlgebraKind::W => n,
                    AlgebraKind::S => n - 1,
                });
                continue;
            }
            assert_eq!(root[0], level, "grey coordinate must equal the level");
            let w = Weight::from_root(&root);
            let length_sq = grey.inner(&w, &w)?;
            out.push(RootEntry { level, root, mult: basis.len(), length_sq });
        }
    }
    out.sort_by(|a, b| b.level.cmp(&a.level).then(a.root.cmp(&b.root)));
    Ok(out)
}

/// Split an invariant subspace into exact eigenspaces of one action.
/// Candidate eigenvalues are read off the action's matrix entries; the split
/// must exhaust the subspace, otherwise the action was not diagonalizable.
fn split_eigenspaces(
    basis: &[SparseVec],
    action: &[SparseVec],
    level: i64,
) -> Result<Vec<(Rat, Vec<SparseVec>)>> {
    let span = linalg::rref(&SparseMat::new(basis.to_vec(), ambient_dim(action)));
    let dim = span.rank();
    // restricted matrix: rows = images of basis vectors in subspace coordinates
    let mut restricted: Vec<SparseVec> = Vec::with_capacity(dim);
    let mut candidates: Vec<Rat> = Vec::new();
    for row in &span.mat.rows {
        let mut img = SparseVec::new();
        for (j, c) in row.iter() {
            img.scaled_add(c, &action[j]);
        }
        let coords = span.coords(&img).ok_or(Error::NotDiagonalizable { level })?;
        for c in &coords {
            if !c.is_zero() && !candidates.contains(c) {
                candidates.push(c.clone());
            }
        }
        restricted.push(SparseVec::from_entries(
            coords.into_iter().enumerate().map(|(i, c)| (i, c)),
        ));
    }
    if !candidates.contains(&Rat::zero()) {
        candidates.push(Rat::zero());
    }
    candidates.sort();

    // kernel of (M - lambda), re-expressed in ambient coordinates
    let mut found = Vec::new();
    let mut total = 0usize;
    for lambda in candidates {
        // transpose the restriction: we need vectors v with v M = lambda v
        // where rows of `restricted` are images of basis vectors; build the
        // matrix with columns = restricted rows and take the kernel.
        let mut cols: Vec<SparseVec> = vec![SparseVec::new(); dim];
        for (i, row) in restricted.iter().enumerate() {
            for (j, c) in row.iter() {
                cols[j].set(i, c.clone());
            }
        }
        for (i, col) in cols.iter_mut().enumerate() {
            col.add_to(i, &-lambda.clone());
        }
        let kernel = linalg::kernel_basis(&SparseMat::new(cols, dim));
        if kernel.is_empty() {
            continue;
        }
        total += kernel.len();
        let sub: Vec<SparseVec> = kernel
            .iter()
            .map(|k| {
                let mut v = SparseVec::new();
                for (i, c) in k.iter() {
                    v.scaled_add(c, &span.mat.rows[i]);
                }
                v
            })
            .collect();
        found.push((lambda, sub));
    }
    if total != dim {
        return Err(Error::NotDiagonalizable { level });
    }
    Ok(found)
}

fn ambient_dim(action: &[SparseVec]) -> usize {
    action.len()
}

/// Every level -k root length must be k - k^2 or 2 + k - k^2, and every
/// level 1 root is null. Lengths are cross-checked against the closed-form
/// weight norm.
pub fn check_root_lengths(n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("root-lengths", n);
    let entries = root_decomposition(AlgebraKind::W, n)?;
    let grey = build_cartan(Series::A, n - 1)?;
    for e in &entries {
        let id = format!("root {:?} at level {}", e.root, e.level);
        if e.level == 1 {
            report.push(Check::from_bool(
                format!("null@{id}"),
                e.length_sq.is_zero(),
                format!("length {}", crate::linalg::fmt_rat(&e.length_sq)),
            ));
            continue;
        }
        let k = -e.level;
        let allowed = [rat(k - k * k), rat(2 + k - k * k)];
        report.push(Check::from_bool(
            id.clone(),
            allowed.contains(&e.length_sq),
            format!(
                "length {} allowed {{{}, {}}}",
                crate::linalg::fmt_rat(&e.length_sq),
                k - k * k,
                2 + k - k * k
            ),
        ));
        // agreement with the weight-norm formula through the Dynkin view
        let w = Weight::from_root(&e.root);
        let (grade, labels) = grey.dynkin_view(&w);
        let norm = crate::cartan::weight_norm(n, &grade, &labels)?;
        report.push(Check::from_bool(
            format!("norm@{id}"),
            norm == e.length_sq,
            String::new(),
        ));
    }
    Ok(report)
}

/// Images of the generators under a fundamental Weyl reflection, as formal
/// expressions over the generator symbols.
#[derive(Clone, Debug)]
pub struct GeneratorAutomorphism {
    pub i: usize,
    pub r: usize,
    images: BTreeMap<Leaf, Expr>,
}

/// The reflection w_i of the presentation (1 <= i <= r = n-1):
/// e and f map within their sl(2)-strings, the f0 family shifts by the
/// Cartan pairing (or brackets with f_1 when i = 1), and h transforms as a
/// weight.
pub fn weyl_automorphism(i: usize, n: usize) -> Result<GeneratorAutomorphism> {
    let r = n - 1;
    if i == 0 || i > r {
        return Err(Error::BadReflectionIndex { index: i });
    }
    let grey = build_cartan(Series::A, r)?;
    let b = &grey.b;
    let mut images: BTreeMap<Leaf, Expr> = BTreeMap::new();

    for a in 0..=r {
        let img = if a == i {
            Expr::word(Word::gen(GenSym::f(a))).scale(&rat(-1))
        } else if b[i][a] == -1 {
            Expr::word(Word::br(Word::gen(GenSym::e(i)), Word::gen(GenSym::e(a))))
        } else {
            Expr::word(Word::gen(GenSym::e(a)))
        };
        images.insert(Leaf::Gen(GenSym::e(a)), img);
    }
    for a in 1..=r {
        let img = if a == i {
            Expr::word(Word::gen(GenSym::e(a))).scale(&rat(-1))
        } else if b[i][a] == -1 {
            Expr::word(Word::br(Word::gen(GenSym::f(i)), Word::gen(GenSym::f(a)))).scale(&rat(-1))
        } else {
            Expr::word(Word::gen(GenSym::f(a)))
        };
        images.insert(Leaf::Gen(GenSym::f(a)), img);
    }
    for a in f0_indices(r) {
        let img = if i == 1 {
            Expr::word(Word::br(Word::gen(GenSym::f(1)), Word::gen(GenSym::f0(a))))
                .scale(&rat(-1))
        } else {
            Expr::word(Word::gen(GenSym::f0(a)))
                .sub(&Expr::word(Word::gen(GenSym::f0(i))).scale(&rat(b[a][i])))
        };
        images.insert(Leaf::Gen(GenSym::f0(a)), img);
    }
    for a in 0..=r {
        let img = Expr::word(Word::h(a)).sub(&Expr::word(Word::h(i)).scale(&rat(b[a][i])));
        images.insert(Leaf::H(a), img);
    }
    Ok(GeneratorAutomorphism { i, r, images })
}

impl GeneratorAutomorphism {
    pub fn image(&self, leaf: &Leaf) -> Expr {
        self.images
            .get(leaf)
            .cloned()
            .unwrap_or_else(|| panic!("no image for {leaf}"))
    }

    /// Substitute the images into an expression.
    pub fn apply(&self, expr: &Expr) -> Expr {
        expr.substitute(&|l| self.image(l))
    }
}

/// Check that every defining relation and every ideal generator is mapped to
/// zero by every fundamental reflection, evaluated in W(n). Also verifies
/// the auxiliary identity [f_1, [e_2, f_{0a}]] = 0 and records the sign of
/// the squared reflection on each generator.
pub fn verify_weyl_invariance(n: usize) -> Result<SuiteReport> {
    let r = n - 1;
    let mut report = SuiteReport::new("weyl", n);
    let grey = build_cartan(Series::A, r)?;
    let (alg, mut asg) = chevalley_assignment(n)?;
    asg.derive_h(&alg, r)?;

    let mut relations: Vec<Relation> = relation_set(&grey);
    relations.extend(ideal_relations(Series::A, r));
    relations.extend(h_consistency_relations(r));

    for i in 1..=r {
        let auto = weyl_automorphism(i, n)?;
        let mut bad = 0usize;
        let mut first_fail = String::new();
        for rel in &relations {
            let transformed = auto.apply(&rel.expr);
            let v = evaluate(&transformed, &asg, &alg)?;
            if !v.is_zero() {
                bad += 1;
                if first_fail.is_empty() {
                    first_fail = format!("{} -> {}", rel.id, v);
                }
            }
        }
        report.push(Check::from_bool(
            format!("reflection-{i}"),
            bad == 0,
            if bad == 0 {
                format!("{} transformed relations vanish", relations.len())
            } else {
                format!("{bad} residuals, first: {first_fail}")
            },
        ));

        // twice-reflected generators come back up to sign
        let mut signs = Vec::new();
        let mut involutive = true;
        for (leaf, _) in asg.leaves() {
            let once = auto.image(leaf);
            let twice = auto.apply(&once);
            let v = evaluate(&twice, &asg, &alg)?;
            let orig = evaluate(&Expr::word(match leaf {
                Leaf::Gen(g) => Word::gen(*g),
                Leaf::H(a) => Word::h(*a),
            }), &asg, &alg)?;
            if v == orig {
                signs.push(format!("{leaf}:+"));
            } else if v == orig.scale(&rat(-1)) {
                signs.push(format!("{leaf}:-"));
            } else {
                involutive = false;
                signs.push(format!("{leaf}:?"));
            }
        }
        report.push(Check::from_bool(
            format!("involution-{i}"),
            involutive,
            signs.join(" "),
        ));
    }

    // [f_1, [e_2, f_{0a}]] = 0 in W(n)
    for a in f0_indices(r) {
        let expr = Expr::word(Word::br(
            Word::gen(GenSym::f(1)),
            Word::br(Word::gen(GenSym::e(2)), Word::gen(GenSym::f0(a))),
        ));
        let v = evaluate(&expr, &asg, &alg)?;
        report.push(Check::from_bool(
            format!("aux-f1e2-f0{a}"),
            v.is_zero(),
            String::new(),
        ));
    }
    Ok(report)
}

/// Roots at each level must be permuted, multiplicities included, by every
/// fundamental reflection of the underlying algebra.
pub fn verify_root_reflection_symmetry(n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("root-symmetry", n);
    let grey = build_cartan(Series::A, n - 1)?;
    let entries = root_decomposition(AlgebraKind::W, n)?;
    let mut by_level: BTreeMap<i64, BTreeMap<Vec<i64>, usize>> = BTreeMap::new();
    for e in &entries {
        *by_level.entry(e.level).or_default().entry(e.root.clone()).or_default() += e.mult;
    }
    for i in 1..n {
        let mut ok = true;
        for (level, multiset) in &by_level {
            let mut reflected: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for (root, m) in multiset {
                let img = grey.reflect_root(i, root)?;
                *reflected.entry(img).or_default() += m;
            }
            if &reflected != multiset {
                ok = false;
                report.push(Check::failed(
                    format!("reflect-{i}@level{level}"),
                    "root multiset not preserved".to_string(),
                ));
            }
        }
        if ok {
            report.push(Check::passed(format!("reflect-{i}"), "all levels preserved"));
        }
    }
    Ok(report)
}

/// Highest-weight labels of the constituents of the square of the level -1
/// generator space of S(n): the six modules carrying the doubled-lowest
/// weight at level -2. Labels are for the underlying A_{n-1}; coincident
/// positions add.
pub fn sym2_level2_modules(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 5 {
        return Err(Error::OutOfRange { what: "module table rank n", value: n as i64 });
    }
    let rank = n - 1;
    let lam = |entries: &[(usize, i64)]| -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &(pos, c) in entries {
            v[pos - 1] += c;
        }
        v
    };
    Ok(vec![
        lam(&[(4, 1), (rank, 2)]),
        lam(&[(3, 1), (rank, 1)]),
        lam(&[(2, 2), (rank, 2)]),
        lam(&[(1, 1), (3, 1), (rank - 1, 1)]),
        lam(&[(1, 1), (2, 1), (rank, 1)]),
        lam(&[(1, 2)]),
    ])
}

/// The three modules examined for the weight with a single 1 in the second
/// position.
pub fn weight_010_modules(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 5 {
        return Err(Error::OutOfRange { what: "module table rank n", value: n as i64 });
    }
    let rank = n - 1;
    let all = sym2_level2_modules(n)?;
    let mut lam2 = vec![0i64; rank];
    lam2[1] = 1;
    Ok(vec![all[0].clone(), all[1].clone(), lam2])
}

/// Table emission. Ids: grading-w, grading-s, roots, mult-20, mult-010.
pub fn emit_table(which: &str, n: usize) -> Result<Table> {
    match which {
        "grading-w" => {
            if !(2..=crate::grassmann::MAX_N).contains(&n) {
                return Err(Error::OutOfRange { what: "grading table rank n", value: n as i64 });
            }
            let mut t = Table::new(format!("grading of W({n})"), &["level", "basis", "dimension"]);
            for p in 0..=n {
                let level = 1 - p as i64;
                t.push_row(vec![
                    Cell::Int(level),
                    Cell::Text(symbol_pattern(p, false)),
                    Cell::Count(n * crate::binomial(n, p)),
                ]);
            }
            Ok(t)
        }
        "grading-s" => {
            if !(2..=crate::grassmann::MAX_N).contains(&n) {
                return Err(Error::OutOfRange { what: "grading table rank n", value: n as i64 });
            }
            let mut t = Table::new(format!("grading of S({n})"), &["level", "basis", "dimension"]);
            for p in 0..=n - 1 {
                let level = 1 - p as i64;
                let dim = n * crate::binomial(n, p)
                    - if p == 0 { 0 } else { crate::binomial(n, p - 1) };
                t.push_row(vec![
                    Cell::Int(level),
                    Cell::Text(symbol_pattern(p, true)),
                    Cell::Count(dim),
                ]);
            }
            Ok(t)
        }
        "roots" => {
            let entries = root_decomposition(AlgebraKind::W, n)?;
            let mut t = Table::new(
                format!("root system of W({n})"),
                &["level", "root", "mult", "length_sq"],
            );
            for e in entries {
                t.push_row(vec![
                    Cell::Int(e.level),
                    Cell::Ints(e.root.clone()),
                    Cell::Count(e.mult),
                    Cell::Rat(e.length_sq.clone()),
                ]);
            }
            Ok(t)
        }
        "mult-20" | "mult-010" => {
            if !(5..=8).contains(&n) {
                return Err(Error::OutOfRange { what: "multiplicity table rank n", value: n as i64 });
            }
            let alg = SimpleAlgebra::new(Series::A, n - 1)?;
            let (modules, target) = if which == "mult-20" {
                let mut tgt = vec![0i64; n - 1];
                tgt[0] = 2;
                (sym2_level2_modules(n)?, tgt)
            } else {
                let mut tgt = vec![0i64; n - 1];
                tgt[1] = 1;
                (weight_010_modules(n)?, tgt)
            };
            let mut t = Table::new(
                format!("multiplicities of {target:?} in A_{} modules", n - 1),
                &["module", "multiplicity"],
            );
            for m in modules {
                let mult = alg.weight_multiplicity(&m, &target)?;
                t.push_row(vec![Cell::Ints(m.clone()), Cell::Count(mult as usize)]);
            }
            Ok(t)
        }
        other => Err(Error::UnknownTable { id: other.to_string() }),
    }
}

fn symbol_pattern(p: usize, hat: bool) -> String {
    let letters = "abcdefghijkl";
    let head = if hat { "Khat" } else { "K" };
    if p == 0 {
        format!("{head}_a")
    } else {
        let ups: String = letters.chars().take(p).collect();
        let low = letters.chars().nth(p).unwrap();
        format!("{head}^{{{ups}}}_{low}")
    }
}
