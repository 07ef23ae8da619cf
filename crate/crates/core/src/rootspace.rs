//! Root space decomposition relative to a torus with toral basis.
//!
//! A root is stored as a bit mask: bit `i` is its value on the `i`-th toral
//! basis element. For rank 3 the letters are `ALPHA = 0b001`,
//! `BETA = 0b010`, `GAMMA = 0b100`, and sums are exclusive-or.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{nullspace, vector, Matrix, Subspace};
use crate::restricted::{is_two_nilpotent, jcs_decompose, square, TwoMap};
use crate::tori::{is_torus, Torus};

pub type Root = u8;

pub const ALPHA: Root = 0b001;
pub const BETA: Root = 0b010;
pub const GAMMA: Root = 0b100;

/// Largest supported torus rank for root masks.
pub const MAX_RANK: usize = 7;

/// Human-readable name of a rank-3 root, e.g. `a+b+c`.
pub fn root_name(r: Root) -> String {
    if r == 0 {
        return "0".into();
    }
    let letters = ["a", "b", "c", "d", "e", "f", "g"];
    (0..MAX_RANK).filter(|i| r >> i & 1 == 1).map(|i| letters[i]).collect::<Vec<_>>().join("+")
}

/// `lambda(t_i)` values as a bit mask after a change of toral basis with rows
/// `p[i]` (bit `j` of `p[i]` is `P_ij`).
pub fn transform_root(p: &[u8], lambda: Root) -> Root {
    p.iter().enumerate().fold(0, |acc, (i, &row)| acc | ((((row & lambda).count_ones() & 1) as u8) << i))
}

#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub torus: Torus,
    pub cartan: Subspace,
    pub nil: Subspace,
    pub roots: BTreeMap<Root, Subspace>,
    /// Inverse of the adapted basis `[t_1..t_r | n | root spaces]`.
    frame: Matrix,
}

impl RootDecomposition {
    pub fn rank(&self) -> usize {
        self.torus.toral_basis.len()
    }

    pub fn toral_basis(&self) -> &[Vec<Fe>] {
        &self.torus.toral_basis
    }

    /// `g_lambda`; the Cartan subalgebra for `lambda = 0`, zero off `Delta`.
    pub fn root_space(&self, lambda: Root) -> Subspace {
        if lambda == 0 {
            return self.cartan.clone();
        }
        self.roots.get(&lambda).cloned().unwrap_or_else(|| Subspace::zero(self.cartan.field(), self.cartan.ambient()))
    }

    pub fn delta(&self) -> Vec<Root> {
        self.roots.keys().copied().collect()
    }

    pub fn dim_of(&self, lambda: Root) -> usize {
        self.roots.get(&lambda).map_or(0, Subspace::dim)
    }

    /// Coordinates of `x` in the torus part of the adapted basis.
    pub fn torus_coordinates(&self, x: &[Fe]) -> Result<Vec<Fe>> {
        let c = self.frame.mul_vec(x)?;
        Ok(c[..self.rank()].to_vec())
    }

    /// Projection onto the torus along `n` and the root spaces.
    pub fn project_to_torus(&self, x: &[Fe]) -> Result<Vec<Fe>> {
        let c = self.torus_coordinates(x)?;
        let f = self.cartan.field();
        Ok(vector::combine(f, self.cartan.ambient(), &c, self.toral_basis()))
    }

    pub fn project_subspace_to_torus(&self, u: &Subspace) -> Result<Subspace> {
        u.map(u.ambient(), |x| self.project_to_torus(x).expect("ambient checked"))
    }

    /// Same decomposition with toral basis `t'_i = sum_j P_ij t_j`.
    pub fn change_basis(&self, p: &[u8]) -> Result<RootDecomposition> {
        let r = self.rank();
        if p.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: p.len() });
        }
        let f = self.cartan.field();
        let n = self.cartan.ambient();
        let basis: Vec<Vec<Fe>> = p
            .iter()
            .map(|&row| {
                let coeffs: Vec<Fe> = (0..r).map(|j| Fe((row >> j & 1) as u16)).collect();
                vector::combine(f, n, &coeffs, self.toral_basis())
            })
            .collect();
        let subspace = Subspace::span(f, n, &basis)?;
        if subspace.dim() != r {
            return Err(Error::InvalidParams("basis change is singular".into()));
        }
        let torus = Torus { subspace, toral_basis: basis };
        let roots = self.roots.iter().map(|(&l, s)| (transform_root(p, l), s.clone())).collect();
        build(torus, self.cartan.clone(), self.nil.clone(), roots)
    }
}

fn build(
    torus: Torus,
    cartan: Subspace,
    nil: Subspace,
    roots: BTreeMap<Root, Subspace>,
) -> Result<RootDecomposition> {
    let f = cartan.field();
    let n = cartan.ambient();
    let mut cols = torus.toral_basis.clone();
    cols.extend(nil.basis_vectors());
    for s in roots.values() {
        cols.extend(s.basis_vectors());
    }
    if cols.len() != n {
        return Err(Error::NonToralBasis { covered: cols.len(), dim: n });
    }
    let frame = Matrix::from_columns(f, n, &cols)?
        .inverse()
        .ok_or(Error::NonToralBasis { covered: cols.len(), dim: n })?;
    Ok(RootDecomposition { torus, cartan, nil, roots, frame })
}

/// The centralizer of the torus.
pub fn cartan_subalgebra(g: &LieAlgebra, t: &Torus) -> Result<Subspace> {
    g.centralizer(&t.subspace)
}

/// `h = t + n` with `n` the 2-nilpotent elements of `h`.
///
/// `n` is spanned by the nilpotent Jordan-Chevalley-Seligman parts of a
/// basis of `h`. It is then checked to be a complement of `t`, to commute
/// with `t`, and to be a nilpotent restricted subalgebra spanned by
/// 2-nilpotent elements; such a subalgebra consists of 2-nilpotent elements.
/// When `k * dim h <= 16` the 2-nilpotent elements of `h` are also counted
/// directly.
pub fn split_cartan(g: &LieAlgebra, tm: &TwoMap, h: &Subspace, t: &Torus) -> Result<Subspace> {
    let fail = |m: &str| Err(Error::SplitFailure(m.to_string()));
    if !t.subspace.is_subspace_of(h)? {
        return fail("torus is not inside the Cartan subalgebra");
    }
    let mut parts = Vec::new();
    for b in h.basis_vectors() {
        let (_, xn) = jcs_decompose(g, tm, &b)?;
        parts.push(xn);
    }
    let nil = Subspace::span(g.field(), g.dim(), &parts)?;
    if t.dim() + nil.dim() != h.dim() || !t.subspace.intersect(&nil)?.is_zero() {
        return fail("2-nilpotent part does not complement the torus");
    }
    if !g.bracket_span(&t.subspace, &nil)?.is_zero() {
        return fail("torus does not commute with the 2-nilpotent part");
    }
    if !g.is_subalgebra(&nil)? || !g.is_nilpotent_subalgebra(&nil)? {
        return fail("2-nilpotent part is not a nilpotent subalgebra");
    }
    for b in nil.basis_vectors() {
        if !nil.contains(&square(g, tm, &b)?)? || !is_two_nilpotent(g, tm, &b)? {
            return fail("2-nilpotent part is not closed under the 2-map");
        }
    }
    if g.field().degree() as usize * h.dim() <= 16 {
        let mut count = 0usize;
        for x in h.elements() {
            if is_two_nilpotent(g, tm, &x)? {
                count += 1;
                if !nil.contains(&x)? {
                    return fail("a 2-nilpotent element lies outside the computed part");
                }
            }
        }
        if count as u64 != (g.field().order() as u64).pow(nil.dim() as u32) {
            return fail("2-nilpotent set is not the computed subspace");
        }
    }
    Ok(nil)
}

/// `g = h + sum g_lambda` for the toral basis of `t`.
pub fn root_decomposition(g: &LieAlgebra, tm: &TwoMap, t: &Torus) -> Result<RootDecomposition> {
    let r = t.toral_basis.len();
    if r > MAX_RANK {
        return Err(Error::InvalidParams(format!("torus rank {r} exceeds {MAX_RANK}")));
    }
    if !is_torus(g, tm, &t.subspace)? {
        return Err(Error::Precondition("not a torus".into()));
    }
    for b in &t.toral_basis {
        if square(g, tm, b)? != *b {
            return Err(Error::Precondition("torus basis is not toral".into()));
        }
    }
    let n = g.dim();
    let f = g.field();
    let ads: Vec<Matrix> = t.toral_basis.iter().map(|b| g.ad(b)).collect::<Result<_>>()?;
    let id = Matrix::identity(f, n);
    let mut roots = BTreeMap::new();
    let mut covered = 0;
    let mut cartan = g.zero_subspace();
    for lambda in 0..(1u16 << r) {
        let mut rows = Vec::new();
        for (i, ad) in ads.iter().enumerate() {
            let m = if lambda >> i & 1 == 1 { ad.add(&id)? } else { ad.clone() };
            rows.extend(m.row_vecs());
        }
        let space = if rows.is_empty() { g.full() } else { nullspace(&Matrix::from_rows(f, n, &rows)?) };
        covered += space.dim();
        if lambda == 0 {
            cartan = space;
        } else if !space.is_zero() {
            roots.insert(lambda as Root, space);
        }
    }
    if covered != n {
        return Err(Error::NonToralBasis { covered, dim: n });
    }
    let nil = split_cartan(g, tm, &cartan, t)?;
    build(t.clone(), cartan, nil, roots)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    /// Pairs `(lambda, mu)` with `[g_lambda, g_mu]` outside `g_{lambda+mu}`.
    pub violations: Vec<(Root, Root)>,
}

impl GradingReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn grading_check(g: &LieAlgebra, d: &RootDecomposition) -> Result<GradingReport> {
    let mut labels = vec![0];
    labels.extend(d.delta());
    let mut report = GradingReport::default();
    for (a, &l) in labels.iter().enumerate() {
        for &m in &labels[a..] {
            let b = g.bracket_span(&d.root_space(l), &d.root_space(m))?;
            if !b.is_subspace_of(&d.root_space(l ^ m))? {
                report.violations.push((l, m));
            }
        }
    }
    Ok(report)
}

/// `[h, h]` acts nilpotently on `g`.
pub fn is_triangulable(g: &LieAlgebra, d: &RootDecomposition) -> Result<bool> {
    g.acts_nilpotently(&g.derived_subalgebra(&d.cartan)?)
}

/// `n` is an ideal of `h`.
pub fn is_standard(g: &LieAlgebra, d: &RootDecomposition) -> Result<bool> {
    g.bracket_span(&d.cartan, &d.nil)?.is_subspace_of(&d.nil)
}

/// Covector of the root `xi` extended by zero on `n` and on every root
/// space: `xi(x) = extended_root(d, xi) . x`.
pub fn extended_root(d: &RootDecomposition, xi: Root) -> Vec<Fe> {
    let f = d.cartan.field();
    let n = d.cartan.ambient();
    let mut cov = vector::zero(n);
    for i in 0..d.rank() {
        if xi >> i & 1 == 1 {
            vector::axpy(f, &mut cov, Fe::ONE, d.frame.row(i));
        }
    }
    cov
}

pub fn evaluate(f: crate::field::Field, covector: &[Fe], x: &[Fe]) -> Fe {
    covector.iter().zip(x).fold(Fe::ZERO, |acc, (&a, &b)| acc + f.mul(a, b))
}

/// `span{b^[2] : b in basis(g_xi)} + [g_xi, g_xi]`, the span of all squares
/// of elements of `g_xi`.
pub fn square_span(g: &LieAlgebra, tm: &TwoMap, d: &RootDecomposition, xi: Root) -> Result<Subspace> {
    let s = d.root_space(xi);
    let squares: Vec<Vec<Fe>> = s.basis_vectors().iter().map(|b| square(g, tm, b)).collect::<Result<_>>()?;
    g.bracket_span(&s, &s)?.extend(&squares)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DeltaLabel {
    D0,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    NonStandardBasis,
}

impl DeltaLabel {
    pub fn index(self) -> Option<usize> {
        use DeltaLabel::*;
        match self {
            D0 => Some(0),
            D1 => Some(1),
            D2 => Some(2),
            D3 => Some(3),
            D4 => Some(4),
            D5 => Some(5),
            D6 => Some(6),
            D7 => Some(7),
            NonStandardBasis => None,
        }
    }

    pub fn name(self) -> String {
        match self.index() {
            Some(i) => format!("Delta{i}"),
            None => "NonStandardBasis".into(),
        }
    }
}

const A: Root = ALPHA;
const B: Root = BETA;
const C: Root = GAMMA;

/// Canonical root sets of rank 3, indexed by label number.
pub const CANONICAL: [(DeltaLabel, &[Root]); 8] = [
    (DeltaLabel::D0, &[A, B, C, A ^ B, A ^ C, B ^ C, A ^ B ^ C]),
    (DeltaLabel::D1, &[A, B, C]),
    (DeltaLabel::D2, &[A, B, C, A ^ B]),
    (DeltaLabel::D3, &[A, B, C, A ^ B ^ C]),
    (DeltaLabel::D4, &[A, B, C, A ^ B, A ^ C]),
    (DeltaLabel::D5, &[A, B, C, A ^ B, A ^ B ^ C]),
    (DeltaLabel::D6, &[A, B, C, A ^ B, A ^ C, B ^ C]),
    (DeltaLabel::D7, &[A, B, C, A ^ B, A ^ C, A ^ B ^ C]),
];

fn set_mask(roots: impl IntoIterator<Item = Root>) -> u8 {
    roots.into_iter().fold(0u8, |acc, r| acc | (1 << r))
}

/// Invertible 3x3 matrices over GF(2) as row masks, in lexicographic order of
/// their entries read row by row.
pub fn gl3() -> Vec<[u8; 3]> {
    let key = |p: &[u8; 3]| -> u32 {
        let mut k = 0;
        for row in p {
            for j in 0..3 {
                k = (k << 1) | (row >> j & 1) as u32;
            }
        }
        k
    };
    let mut out = Vec::with_capacity(168);
    for r0 in 1u8..8 {
        for r1 in 1u8..8 {
            for r2 in 1u8..8 {
                let span2 = [0, r0, r1, r0 ^ r1];
                if r1 != r0 && !span2.contains(&r2) {
                    out.push([r0, r1, r2]);
                }
            }
        }
    }
    out.sort_by_key(key);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaClass {
    pub label: DeltaLabel,
    /// Rows of `P`: the new toral basis is `t'_i = sum_j P_ij t_j`.
    pub basis_change: Option<[u8; 3]>,
    /// Every canonical form in the orbit, with its first basis change.
    pub alternatives: Vec<(DeltaLabel, [u8; 3])>,
}

/// Match `Delta` against the canonical list under all 168 basis changes,
/// trying the identity first and then [`gl3`] order.
///
/// Some canonical sets share an orbit (`Delta4`/`Delta5`, `Delta6`/`Delta7`);
/// the primary label is then the higher-numbered one and the rest are listed
/// as alternatives.
pub fn classify_delta(d: &RootDecomposition) -> DeltaClass {
    classify_root_set(d.rank(), &d.delta())
}

pub fn classify_root_set(rank: usize, delta: &[Root]) -> DeltaClass {
    let none = DeltaClass { label: DeltaLabel::NonStandardBasis, basis_change: None, alternatives: Vec::new() };
    if rank != 3 {
        return none;
    }
    let mut span = vec![0u8];
    for &r in delta {
        if !span.contains(&r) {
            let old = span.clone();
            span.extend(old.iter().map(|s| s ^ r));
        }
    }
    if span.len() < 8 {
        return none;
    }
    let observed = set_mask(delta.iter().copied());
    let mut alternatives: Vec<(DeltaLabel, [u8; 3])> = Vec::new();
    let identity = [1u8, 2, 4];
    let order = std::iter::once(identity).chain(gl3().into_iter().filter(|p| *p != identity));
    for p in order {
        let image = set_mask(delta.iter().map(|&r| transform_root(&p, r)));
        debug_assert_eq!(image.count_ones(), observed.count_ones());
        for (label, canon) in CANONICAL {
            if image == set_mask(canon.iter().copied()) && !alternatives.iter().any(|(l, _)| *l == label) {
                alternatives.push((label, p));
            }
        }
    }
    alternatives.sort_by_key(|(l, _)| std::cmp::Reverse(*l));
    match alternatives.first() {
        Some(&(label, p)) => DeltaClass { label, basis_change: Some(p), alternatives },
        None => none,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;
    use crate::tori::{maximal_torus, TorusMode};

    fn decompose(g: &LieAlgebra, tm: &TwoMap) -> RootDecomposition {
        let t = maximal_torus(g, tm, TorusMode::Exhaustive).unwrap();
        root_decomposition(g, tm, &t).unwrap()
    }

    #[test]
    fn gl3_has_168_elements() {
        let all = gl3();
        assert_eq!(all.len(), 168);
        assert_eq!(all[0], [4, 2, 1]);
        assert_eq!(all.iter().filter(|p| **p == [1, 2, 4]).count(), 1);
    }

    #[test]
    fn transform_identity_and_swap() {
        assert_eq!(transform_root(&[1, 2, 4], A ^ C), A ^ C);
        // swap t1 and t2
        assert_eq!(transform_root(&[2, 1, 4], A), B);
        assert_eq!(transform_root(&[2, 1, 4], A ^ C), B ^ C);
    }

    #[test]
    fn classify_examples() {
        let c = classify_root_set(3, &[A, B, C]);
        assert_eq!(c.label, DeltaLabel::D1);
        assert_eq!(c.basis_change, Some([1, 2, 4]));
        assert_eq!(classify_root_set(3, &[A, B, C, A ^ B]).label, DeltaLabel::D2);
        assert_eq!(classify_root_set(3, &[A, B, C, A ^ B ^ C]).label, DeltaLabel::D3);
        let c = classify_root_set(3, &[A, B, A ^ B, C, B ^ C]);
        assert_eq!(c.label, DeltaLabel::D5);
        assert!(c.alternatives.iter().any(|(l, _)| *l == DeltaLabel::D4));
        for (l, p) in &c.alternatives {
            let canon = CANONICAL[l.index().unwrap()].1;
            let image = set_mask([A, B, A ^ B, C, B ^ C].map(|r| transform_root(p, r)));
            assert_eq!(image, set_mask(canon.iter().copied()));
        }
        assert_eq!(classify_root_set(3, &[A, B, A ^ B]).label, DeltaLabel::NonStandardBasis);
        assert_eq!(classify_root_set(2, &[A, B]).label, DeltaLabel::NonStandardBasis);
        assert_eq!(classify_root_set(3, &[1, 2, 3, 4, 5, 6, 7]).label, DeltaLabel::D0);
    }

    #[test]
    fn classification_is_equivariant() {
        for (label, canon) in CANONICAL {
            for p in gl3().iter().step_by(7) {
                let moved: Vec<Root> = canon.iter().map(|&r| transform_root(p, r)).collect();
                let c = classify_root_set(3, &moved);
                let base = classify_root_set(3, canon);
                assert_eq!(c.label, base.label);
                assert!(base.alternatives.iter().any(|(l, _)| *l == label));
            }
        }
    }

    #[test]
    fn f6_decomposition() {
        let (g, tm) = fixtures::f6().unwrap();
        let d = decompose(&g, &tm);
        assert_eq!(d.cartan, Subspace::coordinate(Field::GF2, 6, [0, 1, 2]));
        assert!(d.nil.is_zero());
        assert_eq!(d.delta().len(), 3);
        assert!(d.roots.values().all(|s| s.dim() == 1));
        assert_eq!(classify_delta(&d).label, DeltaLabel::D1);
        assert!(grading_check(&g, &d).unwrap().is_clean());
        assert!(is_triangulable(&g, &d).unwrap());
        assert!(is_standard(&g, &d).unwrap());
        for xi in d.delta() {
            assert!(square_span(&g, &tm, &d, xi).unwrap().is_zero());
        }
    }

    #[test]
    fn gl2_single_root() {
        let (g, tm) = fixtures::gl(2).unwrap();
        let diag = Subspace::coordinate(Field::GF2, 4, [0, 3]);
        let t = Torus { subspace: diag.clone(), toral_basis: vec![vector::unit(4, 0), vector::unit(4, 3)] };
        let d = root_decomposition(&g, &tm, &t).unwrap();
        assert_eq!(d.cartan, diag);
        assert_eq!(d.delta(), vec![0b11]);
        assert_eq!(d.root_space(0b11), Subspace::coordinate(Field::GF2, 4, [1, 2]));
        let ss = square_span(&g, &tm, &d, 0b11).unwrap();
        assert_eq!(ss, Subspace::span(Field::GF2, 4, &[vector::from_mask(4, 0b1001)]).unwrap());
        // Remark chain: [g_xi, g_xi] in square span in ker(xi)
        let cov = extended_root(&d, 0b11);
        for v in ss.basis_vectors() {
            assert!(evaluate(Field::GF2, &cov, &v).is_zero());
        }
    }

    #[test]
    fn torus_alone_has_no_roots() {
        let (g, tm) = fixtures::torus(3).unwrap();
        let d = decompose(&g, &tm);
        assert!(d.delta().is_empty());
        assert!(d.cartan.is_full());
    }

    #[test]
    fn f6n_nil_part() {
        let (g, tm) = fixtures::f6n().unwrap();
        let d = decompose(&g, &tm);
        assert_eq!(d.nil.dim(), 1);
        let z = d.nil.basis_vectors().remove(0);
        assert!(is_two_nilpotent(&g, &tm, &z).unwrap());
        assert!(is_standard(&g, &d).unwrap());
    }

    #[test]
    fn extended_root_values() {
        let (g, tm) = fixtures::f7().unwrap();
        let d = decompose(&g, &tm);
        for xi in d.delta() {
            let cov = extended_root(&d, xi);
            for (i, t) in d.toral_basis().iter().enumerate() {
                assert_eq!(evaluate(g.field(), &cov, t), Fe((xi >> i & 1) as u16));
            }
            for v in d.nil.basis_vectors() {
                assert!(evaluate(g.field(), &cov, &v).is_zero());
            }
        }
    }

    #[test]
    fn change_basis_permutes_roots() {
        let (g, tm) = fixtures::f6().unwrap();
        let d = decompose(&g, &tm);
        let p = [2u8, 1, 4];
        let e = d.change_basis(&p).unwrap();
        for lambda in d.delta() {
            assert_eq!(e.root_space(transform_root(&p, lambda)), d.root_space(lambda));
        }
        // the relabelled toral basis still acts by the relabelled roots
        for (lambda, s) in &e.roots {
            for v in s.basis_vectors() {
                for (i, t) in e.toral_basis().iter().enumerate() {
                    let expect = if lambda >> i & 1 == 1 { v.clone() } else { vector::zero(g.dim()) };
                    assert_eq!(g.bracket(t, &v).unwrap(), expect);
                }
            }
        }
        assert!(d.change_basis(&[1, 1, 4]).is_err());
    }
}
