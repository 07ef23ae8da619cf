use super::nsub::n_subspace;
use super::{nil_plus_roots, toral_span, IdealReport, LemmaId};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::rootspace::{gl3, transform_root, Root, RootDecomposition};

const A: Root = 0b001;
const B: Root = 0b010;
const C: Root = 0b100;

/// Whether the dimension hypothesis of `lemma` holds for `dims`, indexed by
/// root mask (`dims[0]` is ignored).
pub fn hypothesis_holds(lemma: LemmaId, dims: &[usize; 8]) -> bool {
    let [a, b, c, ab, ac, bc, abc] = [A, B, C, A ^ B, A ^ C, B ^ C, A ^ B ^ C].map(|r| dims[r as usize]);
    let max_of = |xs: &[usize]| xs.iter().copied().max().unwrap_or(0);
    let chain_a = a == b && b == ab && ab >= c && c >= ac && ac >= bc && bc >= abc;
    let chain_b = a == b && b == c && c == abc && abc >= ab && ab >= ac && ac >= bc;
    match lemma {
        LemmaId::AlphaGtBeta => a > b && b >= max_of(&[c, ab, ac, bc, abc]),
        LemmaId::BetaGtXi => a >= b && b > max_of(&[c, ab, ac, bc, abc]),
        LemmaId::AlphaBetaGtAlphaGamma => chain_a && ab > ac,
        LemmaId::BetaGammaGtABG => chain_a && bc > abc,
        LemmaId::AlphaGammaGtEq => chain_a && ac > bc && bc == abc,
        LemmaId::GammaGtXi => a == b && b == c && c > max_of(&[ab, ac, bc, abc]),
        LemmaId::ABGGtAlphaGamma => chain_b && abc > ac,
        LemmaId::AlphaGammaGtBetaGamma => chain_b && ac > bc,
        _ => false,
    }
}

/// First construction, in fixed order, whose hypothesis holds for `dims`.
pub fn lemma_for_dims(dims: &[usize; 8]) -> Option<LemmaId> {
    LemmaId::RANK3.into_iter().find(|&l| hypothesis_holds(l, dims))
}

/// Root-space dimensions after the basis change `p`, indexed by new mask.
fn relabeled_dims(d: &RootDecomposition, p: &[u8; 3]) -> [usize; 8] {
    let mut dims = [0; 8];
    for (&r, s) in &d.roots {
        dims[transform_root(p, r) as usize] = s.dim();
    }
    dims
}

/// First construction, in fixed order, whose hypothesis holds in some toral
/// basis, together with the first such basis change in [`gl3`] order.
pub fn select_case(d: &RootDecomposition) -> Option<([u8; 3], LemmaId)> {
    let all: Vec<([u8; 3], [usize; 8])> = gl3().into_iter().map(|p| (p, relabeled_dims(d, &p))).collect();
    LemmaId::RANK3
        .into_iter()
        .find_map(|l| all.iter().find(|(_, dims)| hypothesis_holds(l, dims)).map(|&(p, _)| (p, l)))
}

fn sum(spaces: impl IntoIterator<Item = Result<Subspace>>) -> Result<Subspace> {
    let mut it = spaces.into_iter();
    let mut acc = it.next().expect("at least one summand")?;
    for s in it {
        acc = acc.sum(&s?)?;
    }
    Ok(acc)
}

/// The subspace named by `lemma`, read in the relabeled decomposition `d`.
fn ideal_for(g: &LieAlgebra, d: &RootDecomposition, lemma: LemmaId) -> Result<Subspace> {
    let all_roots = || nil_plus_roots(d, |_| true);
    let with_torus = |masks: &[u8]| -> Result<Subspace> { toral_span(d, masks)?.sum(&all_roots()?) };
    match lemma {
        LemmaId::AlphaGtBeta | LemmaId::AlphaGammaGtEq => with_torus(&[B, C]),
        LemmaId::BetaGtXi => with_torus(&[C, A ^ B]),
        LemmaId::BetaGammaGtABG | LemmaId::GammaGtXi => with_torus(&[A ^ B, A ^ C]),
        LemmaId::AlphaGammaGtBetaGamma => with_torus(&[A, B ^ C]),
        LemmaId::AlphaBetaGtAlphaGamma => sum([
            nil_plus_roots(d, |r| r & C != 0),
            n_subspace(g, d, A, B),
            n_subspace(g, d, B, A),
            n_subspace(g, d, A ^ B, A),
        ]),
        LemmaId::ABGGtAlphaGamma => sum([
            nil_plus_roots(d, |r| r.count_ones() != 2),
            n_subspace(g, d, A ^ B, A ^ C),
            n_subspace(g, d, A ^ C, B ^ C),
            n_subspace(g, d, B ^ C, A ^ B),
        ]),
        LemmaId::Dim1 => all_roots(),
        other => Err(Error::Precondition(format!("{other:?} is not a rank-3 construction"))),
    }
}

/// Ideal from the first construction whose dimension hypothesis holds in
/// some toral basis. All seven roots must be present and the algebra must be
/// centerless; with all root-space dimensions equal the report carries
/// `LemmaId::None` and the zero subspace.
pub fn construct_ideal_rank3(g: &LieAlgebra, d: &RootDecomposition) -> Result<IdealReport> {
    if d.rank() != 3 {
        return Err(Error::Precondition(format!("torus rank {} is not 3", d.rank())));
    }
    if d.roots.len() != 7 {
        return Err(Error::Precondition(format!("{} roots, not all seven", d.roots.len())));
    }
    if !g.center().is_zero() {
        return Err(Error::Precondition("algebra has a nonzero center".into()));
    }
    match select_case(d) {
        None => IdealReport::new(g, LemmaId::None, g.zero_subspace(), None),
        Some((p, lemma)) => {
            let relabeled = d.change_basis(&p)?;
            IdealReport::new(g, lemma, ideal_for(g, &relabeled, lemma)?, Some(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::restricted::TwoMap;
    use crate::rootspace::root_decomposition;
    use crate::tori::{maximal_torus, TorusMode};

    fn setup(name: &str) -> (LieAlgebra, TwoMap, RootDecomposition) {
        let (g, tm) = fixtures::by_name(name).unwrap();
        let t = maximal_torus(&g, &tm, TorusMode::Exhaustive).unwrap();
        let d = root_decomposition(&g, &tm, &t).unwrap();
        (g, tm, d)
    }

    fn dims_from(ds: [usize; 7]) -> [usize; 8] {
        let mut out = [0; 8];
        out[1..].copy_from_slice(&ds);
        out
    }

    #[test]
    fn every_unequal_pattern_has_a_case() {
        // all patterns over {1,2,3}
        for code in 0..3usize.pow(7) {
            let mut ds = [0; 7];
            let mut c = code;
            for x in ds.iter_mut() {
                *x = c % 3 + 1;
                c /= 3;
            }
            let dims = dims_from(ds);
            let equal = ds.iter().all(|&x| x == ds[0]);
            let found = gl3().into_iter().find_map(|p| {
                let mut moved = [0; 8];
                for r in 1..8u8 {
                    moved[transform_root(&p, r) as usize] = dims[r as usize];
                }
                lemma_for_dims(&moved)
            });
            assert_eq!(found.is_none(), equal, "{ds:?}");
        }
    }

    #[test]
    fn u1_fires_first_construction() {
        let (g, _, d) = setup("U1");
        let r = construct_ideal_rank3(&g, &d).unwrap();
        assert_eq!(r.lemma, LemmaId::AlphaGtBeta);
        assert!(r.is_witness());
        assert_eq!(r.subspace.dim(), 2 + 8);
        assert_eq!(g.ideal_closure(&r.subspace).unwrap(), r.subspace);
    }

    #[test]
    fn u2_uses_n_subspaces() {
        let (g, _, d) = setup("U2");
        let r = construct_ideal_rank3(&g, &d).unwrap();
        assert_eq!(r.lemma, LemmaId::AlphaBetaGtAlphaGamma);
        assert!(r.is_witness(), "{r:?}");
    }

    #[test]
    fn equal_dims_give_none() {
        let (g, _, d) = setup("F7");
        let r = construct_ideal_rank3(&g, &d).unwrap();
        assert_eq!(r.lemma, LemmaId::None);
        assert!(r.subspace.is_zero());
    }

    #[test]
    fn patterns_give_witnesses() {
        for dims in [[2, 1, 1, 1, 1, 1, 1], [1, 1, 2, 1, 2, 1, 2], [2, 2, 1, 2, 1, 1, 1], [1, 2, 2, 2, 1, 1, 2]] {
            let (g, tm) = fixtures::pattern(dims).unwrap();
            let t = maximal_torus(&g, &tm, TorusMode::Exhaustive).unwrap();
            let d = root_decomposition(&g, &tm, &t).unwrap();
            let r = construct_ideal_rank3(&g, &d).unwrap();
            assert!(r.is_witness(), "{dims:?} {r:?}");
        }
    }

    #[test]
    fn basis_permutation_keeps_dimension() {
        let (g, _, d) = setup("U2");
        let base = construct_ideal_rank3(&g, &d).unwrap();
        for p in gl3().into_iter().step_by(17) {
            let moved = d.change_basis(&p).unwrap();
            let r = construct_ideal_rank3(&g, &moved).unwrap();
            assert_eq!(r.subspace.dim(), base.subspace.dim());
            assert_eq!(r.verified_ideal, base.verified_ideal);
        }
    }

    #[test]
    fn rejects_small_root_sets() {
        let (g, _, d) = setup("F6");
        assert!(matches!(construct_ideal_rank3(&g, &d), Err(Error::Precondition(_))));
    }
}
