//! Toral elements, tori and the relative toral rank.
//!
//! Two facts keep the search on GF(2) bit vectors even over GF(2^k):
//! commuting toral elements that are independent over GF(2) stay independent
//! over GF(2^k), and the toral elements of a torus with toral basis
//! `t_1..t_r` are exactly the nonzero GF(2)-combinations of the `t_i`.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{vector, Subspace};
use crate::packed::{PackedAlgebra, PackedBasis};
use crate::restricted::{restrict, square, TwoMap};

/// Enumeration limit, in bits (`k * dim`), for toral-element searches.
pub const TORAL_BUDGET_BITS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    pub subspace: Subspace,
    pub toral_basis: Vec<Vec<Fe>>,
}

impl Torus {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorusMode {
    Greedy,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub torus: Torus,
    /// Greedy mode only bounds the rank from below.
    pub lower_bound_only: bool,
}

/// Vector order used for every tie-break: compare the last coordinate first.
/// It agrees with the order of packed values.
pub fn vector_order(a: &[Fe], b: &[Fe]) -> Ordering {
    a.iter().rev().map(|x| x.0).cmp(b.iter().rev().map(|x| x.0))
}

fn check_budget(bits: usize) -> Result<()> {
    if bits > TORAL_BUDGET_BITS {
        return Err(Error::BudgetExceeded { needed: bits, limit: TORAL_BUDGET_BITS });
    }
    Ok(())
}

/// Every nonzero `t` with `t^[2] = t`, in [`vector_order`].
pub fn toral_elements(g: &LieAlgebra, tm: &TwoMap) -> Result<Vec<Vec<Fe>>> {
    check_budget(g.field().degree() as usize * g.dim())?;
    let pa = PackedAlgebra::new(g, tm)?;
    Ok(pa.toral_elements().into_iter().map(|w| pa.unpack(w)).collect())
}

/// Toral elements lying in the restricted subalgebra `u`, in [`vector_order`].
fn toral_elements_in(g: &LieAlgebra, tm: &TwoMap, u: &Subspace) -> Result<Vec<Vec<Fe>>> {
    check_budget(g.field().degree() as usize * u.dim())?;
    if u.is_zero() {
        return Ok(Vec::new());
    }
    let (sub, sub_tm) = restrict(g, tm, u)?;
    let pa = PackedAlgebra::new(&sub, &sub_tm)?;
    let basis = u.basis_vectors();
    let mut out: Vec<Vec<Fe>> = pa
        .toral_elements()
        .into_iter()
        .map(|w| vector::combine(g.field(), g.dim(), &pa.unpack(w), &basis))
        .collect();
    out.sort_by(|a, b| vector_order(a, b));
    Ok(out)
}

/// Abelian, closed under the 2-map, and the 2-map is injective on it.
///
/// On an abelian subspace the 2-map is Frobenius-semilinear, so closure and
/// injectivity only need the images of a basis.
pub fn is_torus(g: &LieAlgebra, tm: &TwoMap, u: &Subspace) -> Result<bool> {
    if !g.bracket_span(u, u)?.is_zero() {
        return Ok(false);
    }
    let images = u.basis_vectors().iter().map(|b| square(g, tm, b)).collect::<Result<Vec<_>>>()?;
    let span = Subspace::span(g.field(), g.dim(), &images)?;
    Ok(span == *u)
}

/// A basis of the torus `u` made of toral elements: the smallest independent
/// toral elements in [`vector_order`].
pub fn toral_basis(g: &LieAlgebra, tm: &TwoMap, u: &Subspace) -> Result<Vec<Vec<Fe>>> {
    if !is_torus(g, tm, u)? {
        return Err(Error::Precondition("subspace is not a torus".into()));
    }
    let mut span = Subspace::zero(g.field(), g.dim());
    let mut basis = Vec::new();
    for t in toral_elements_in(g, tm, u)? {
        if span.dim() == u.dim() {
            break;
        }
        if !span.contains(&t)? {
            span = span.extend(std::slice::from_ref(&t))?;
            basis.push(t);
        }
    }
    if basis.len() < u.dim() {
        return Err(Error::FieldTooSmall(format!(
            "torus of dim {} has only {} independent toral elements over GF(2^{})",
            u.dim(),
            basis.len(),
            g.field().degree()
        )));
    }
    Ok(basis)
}

fn torus_from_basis(g: &LieAlgebra, basis: Vec<Vec<Fe>>) -> Result<Torus> {
    let subspace = Subspace::span(g.field(), g.dim(), &basis)?;
    Ok(Torus { subspace, toral_basis: basis })
}

/// A maximal torus.
///
/// Greedy: repeatedly add the smallest toral element of the centralizer that
/// is not yet in the torus. Exhaustive: a torus of maximum dimension.
pub fn maximal_torus(g: &LieAlgebra, tm: &TwoMap, mode: TorusMode) -> Result<Torus> {
    match mode {
        TorusMode::Greedy => greedy_torus(g, tm),
        TorusMode::Exhaustive => exhaustive_torus(g, tm),
    }
}

fn greedy_torus(g: &LieAlgebra, tm: &TwoMap) -> Result<Torus> {
    let mut span = g.zero_subspace();
    let mut basis: Vec<Vec<Fe>> = Vec::new();
    loop {
        let c = g.centralizer(&span)?;
        let mut next = None;
        for t in toral_elements_in(g, tm, &c)? {
            if !span.contains(&t)? {
                next = Some(t);
                break;
            }
        }
        match next {
            Some(t) => {
                span = span.extend(std::slice::from_ref(&t))?;
                basis.push(t);
            }
            None => break,
        }
    }
    torus_from_basis(g, basis)
}

struct Search<'a> {
    pa: &'a PackedAlgebra,
    toral: &'a [u64],
    best: Vec<u64>,
    upper: usize,
}

impl Search<'_> {
    /// `chosen` is the greedy basis of its span: increasing, and each entry is
    /// the least element of its coset modulo the earlier ones. This visits
    /// every torus exactly once.
    fn dfs(&mut self, chosen: &mut Vec<u64>, span: &mut Vec<u64>, candidates: &[usize]) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if self.best.len() >= self.upper {
            return;
        }
        let mut rank = PackedBasis::new(self.pa.bits());
        for &c in candidates {
            rank.insert(self.toral[c]);
        }
        if chosen.len() + rank.dim() <= self.best.len() {
            return;
        }
        for (pos, &c) in candidates.iter().enumerate() {
            let t = self.toral[c];
            if span.iter().any(|&s| s != 0 && (t ^ s) < t) {
                continue;
            }
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| self.pa.bracket(t, self.toral[d]) == 0)
                .collect();
            let old = span.len();
            for i in 0..old {
                span.push(span[i] ^ t);
            }
            chosen.push(t);
            self.dfs(chosen, span, &next);
            chosen.pop();
            span.truncate(old);
            if self.best.len() >= self.upper {
                return;
            }
        }
    }
}

fn exhaustive_torus(g: &LieAlgebra, tm: &TwoMap) -> Result<Torus> {
    check_budget(g.field().degree() as usize * g.dim())?;
    let pa = PackedAlgebra::new(g, tm)?;
    let toral = pa.toral_elements();
    let mut all = PackedBasis::new(pa.bits());
    for &t in &toral {
        all.insert(t);
    }
    let mut search = Search { pa: &pa, toral: &toral, best: Vec::new(), upper: all.dim().min(g.dim()) };
    let candidates: Vec<usize> = (0..toral.len()).collect();
    search.dfs(&mut Vec::new(), &mut vec![0], &candidates);
    let basis = search.best.iter().map(|&w| pa.unpack(w)).collect();
    torus_from_basis(g, basis)
}

/// Relative toral rank `MT(g)` over the algebra's own field, with a witness.
pub fn toral_rank(g: &LieAlgebra, tm: &TwoMap, mode: TorusMode) -> Result<RankReport> {
    let torus = maximal_torus(g, tm, mode)?;
    Ok(RankReport { rank: torus.dim(), torus, lower_bound_only: mode == TorusMode::Greedy })
}

/// Visit the toral elements of `g` with early exit, for callers that only
/// need existence.
pub fn any_toral(g: &LieAlgebra, tm: &TwoMap) -> Result<bool> {
    check_budget(g.field().degree() as usize * g.dim())?;
    let pa = PackedAlgebra::new(g, tm)?;
    Ok(pa
        .gray_walk(|x, sq, _| if x != 0 && x == sq { ControlFlow::Break(()) } else { ControlFlow::Continue(()) })
        .is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::fixtures;

    fn mask(n: usize, m: u64) -> Vec<Fe> {
        vector::from_mask(n, m)
    }

    #[test]
    fn toral_elements_small_cases() {
        let a = LieAlgebra::abelian(Field::GF2, 3);
        assert!(toral_elements(&a, &TwoMap::zero(3)).unwrap().is_empty());
        assert!(!any_toral(&a, &TwoMap::zero(3)).unwrap());
        let one = LieAlgebra::abelian(Field::GF2, 1);
        let id = TwoMap::new(vec![vector::unit(1, 0)]);
        assert_eq!(toral_elements(&one, &id).unwrap(), vec![vector::unit(1, 0)]);
    }

    #[test]
    fn gl2_toral_elements_match_idempotent_matrices() {
        // Oracle: 2x2 matrices over GF(2) with A^2 = A, excluding zero.
        // Basis order E11, E12, E21, E22; bit i of the mask is coordinate i.
        let (g, tm) = fixtures::gl(2).unwrap();
        let mut expect = Vec::new();
        for m in 1u64..16 {
            let (a, b, c, d) = (m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1);
            let sq = [(a & a) ^ (b & c), (a & b) ^ (b & d), (c & a) ^ (d & c), (c & b) ^ (d & d)];
            if sq == [a, b, c, d] {
                expect.push(mask(4, m));
            }
        }
        expect.sort_by(|x, y| vector_order(x, y));
        let got = toral_elements(&g, &tm).unwrap();
        assert_eq!(got, expect);
        assert!(got.contains(&mask(4, 0b0011)));
    }

    #[test]
    fn torus_recognition_and_basis() {
        let (g, tm) = fixtures::gl(2).unwrap();
        let diag = Subspace::coordinate(Field::GF2, 4, [0, 3]);
        assert!(is_torus(&g, &tm, &diag).unwrap());
        assert_eq!(toral_basis(&g, &tm, &diag).unwrap(), vec![mask(4, 0b0001), mask(4, 0b1000)]);
        let nil = Subspace::coordinate(Field::GF2, 4, [1]);
        assert!(!is_torus(&g, &tm, &nil).unwrap());
        assert!(toral_basis(&g, &tm, &nil).is_err());
    }

    #[test]
    fn swapped_torus_needs_a_bigger_field() {
        // t^[2] = s, s^[2] = t: a torus with only one toral element over GF(2)
        let g = LieAlgebra::abelian(Field::GF2, 2);
        let tm = TwoMap::new(vec![vector::unit(2, 1), vector::unit(2, 0)]);
        let full = g.full();
        assert!(is_torus(&g, &tm, &full).unwrap());
        assert!(matches!(toral_basis(&g, &tm, &full), Err(Error::FieldTooSmall(_))));
        let f4 = Field::new(2).unwrap();
        let emb = Field::GF2.embedding_into(f4).unwrap();
        let g4 = g.extend_scalars(f4).unwrap();
        let tm4 = tm.extend_scalars(&emb);
        assert_eq!(toral_basis(&g4, &tm4, &g4.full()).unwrap().len(), 2);
        assert_eq!(toral_rank(&g, &tm, TorusMode::Exhaustive).unwrap().rank, 1);
        assert_eq!(toral_rank(&g4, &tm4, TorusMode::Exhaustive).unwrap().rank, 2);
    }

    #[test]
    fn ranks_of_basic_fixtures() {
        for r in 0..=4 {
            let (g, tm) = fixtures::torus(r).unwrap();
            for mode in [TorusMode::Greedy, TorusMode::Exhaustive] {
                let rep = toral_rank(&g, &tm, mode).unwrap();
                assert_eq!(rep.rank, r);
                assert!(is_torus(&g, &tm, &rep.torus.subspace).unwrap());
            }
        }
        let (g, tm) = fixtures::f6().unwrap();
        let rep = toral_rank(&g, &tm, TorusMode::Exhaustive).unwrap();
        assert_eq!(rep.rank, 3);
        assert!(!rep.lower_bound_only);
        let (g, tm) = fixtures::gl(2).unwrap();
        let ex = toral_rank(&g, &tm, TorusMode::Exhaustive).unwrap();
        let gr = toral_rank(&g, &tm, TorusMode::Greedy).unwrap();
        assert_eq!((ex.rank, gr.rank), (2, 2));
        assert!(gr.lower_bound_only);
    }

    #[test]
    fn budget_is_enforced() {
        let g = LieAlgebra::abelian(Field::GF2, 25);
        let tm = TwoMap::zero(25);
        assert!(matches!(toral_elements(&g, &tm), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(maximal_torus(&g, &tm, TorusMode::Exhaustive), Err(Error::BudgetExceeded { .. })));
    }
}
