use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::{nullspace, vector, Matrix, Subspace};
use crate::rootspace::{evaluate, root_name, Root, RootDecomposition};

/// `N(sigma, delta)`: the `x` in `g_sigma` with `[x, g_sigma]` in `n` and
/// `[[x, g_delta], g_{sigma+delta}]` in `n`.
///
/// Both conditions are linear in `x`, so the result is the null space of the
/// stacked constraint matrix over the coordinates of `g_sigma`.
pub fn n_subspace(g: &LieAlgebra, d: &RootDecomposition, sigma: Root, delta: Root) -> Result<Subspace> {
    if sigma == delta {
        return Err(Error::Precondition("N(sigma, delta) needs distinct roots".into()));
    }
    for r in [sigma, delta] {
        if d.dim_of(r) == 0 {
            return Err(Error::Precondition(format!("{} is not a root", root_name(r))));
        }
    }
    let f = g.field();
    let n = g.dim();
    let gs = d.root_space(sigma).basis_vectors();
    let gd = d.root_space(delta).basis_vectors();
    let gsd = d.root_space(sigma ^ delta).basis_vectors();
    let ann = d.nil.annihilator().row_vecs();

    // images[i] lists L(b_i) for every constraint map L
    let mut images: Vec<Vec<Vec<Fe>>> = Vec::with_capacity(gs.len());
    for b in &gs {
        let mut out = Vec::new();
        for y in &gs {
            out.push(g.bracket(b, y)?);
        }
        for u in &gd {
            let bu = g.bracket(b, u)?;
            for w in &gsd {
                out.push(g.bracket(&bu, w)?);
            }
        }
        images.push(out);
    }
    let maps = images.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(maps * ann.len());
    for l in 0..maps {
        for a in &ann {
            rows.push(images.iter().map(|im| evaluate(f, a, &im[l])).collect::<Vec<Fe>>());
        }
    }
    let m = Matrix::from_rows(f, gs.len(), &rows)?;
    let coeffs = nullspace(&m).basis_vectors();
    let vs: Vec<Vec<Fe>> = coeffs.iter().map(|c| vector::combine(f, n, c, &gs)).collect();
    Subspace::span(f, n, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rootspace::{root_decomposition, ALPHA, BETA, GAMMA};
    use crate::tori::{maximal_torus, TorusMode};

    fn setup(name: &str) -> (LieAlgebra, RootDecomposition) {
        let (g, tm) = fixtures::by_name(name).unwrap();
        let t = maximal_torus(&g, &tm, TorusMode::Exhaustive).unwrap();
        let d = root_decomposition(&g, &tm, &t).unwrap();
        (g, d)
    }

    /// Enumerate `g_sigma` and test both conditions element by element.
    fn brute(g: &LieAlgebra, d: &RootDecomposition, sigma: Root, delta: Root) -> Vec<Vec<Fe>> {
        let gs = d.root_space(sigma);
        let gd = d.root_space(delta).basis_vectors();
        let gsd = d.root_space(sigma ^ delta).basis_vectors();
        gs.elements()
            .filter(|x| {
                gs.basis_vectors().iter().all(|y| d.nil.contains(&g.bracket(x, y).unwrap()).unwrap())
                    && gd.iter().all(|u| {
                        let xu = g.bracket(x, u).unwrap();
                        gsd.iter().all(|w| d.nil.contains(&g.bracket(&xu, w).unwrap()).unwrap())
                    })
            })
            .collect()
    }

    #[test]
    fn matches_enumeration() {
        for name in ["F6", "F7", "F6n", "U2", "gl:3", "pattern:2121211"] {
            let (g, d) = setup(name);
            let delta = d.delta();
            for &s in &delta {
                for &t in &delta {
                    if s == t {
                        continue;
                    }
                    let ns = n_subspace(&g, &d, s, t).unwrap();
                    let expected = brute(&g, &d, s, t);
                    assert_eq!(ns.elements().count(), expected.len(), "{name} {s} {t}");
                    assert!(expected.iter().all(|x| ns.contains(x).unwrap()));
                }
            }
        }
    }

    #[test]
    fn one_dimensional_trivial_brackets_give_everything() {
        let (g, d) = setup("F6");
        assert_eq!(n_subspace(&g, &d, ALPHA, BETA).unwrap(), d.root_space(ALPHA));
    }

    #[test]
    fn toral_self_bracket_excludes_everything() {
        // gl(3): g_{a+b} = span{E12, E21} and [E12, E21] is toral
        let (g, d) = setup("gl:3");
        let s = d.delta().into_iter().find(|&r| d.dim_of(r) == 2).unwrap();
        let t = d.delta().into_iter().find(|&r| r != s).unwrap();
        assert!(n_subspace(&g, &d, s, t).unwrap().is_zero());
    }

    #[test]
    fn identity_under_sum_replacement() {
        let (g, d) = setup("U2");
        for s in 1..8u8 {
            for t in 1..8u8 {
                if s != t && s != s ^ t && d.dim_of(s ^ t) > 0 {
                    assert_eq!(n_subspace(&g, &d, s, t).unwrap(), n_subspace(&g, &d, s, s ^ t).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_roots() {
        let (g, d) = setup("F6");
        assert!(n_subspace(&g, &d, ALPHA, ALPHA).is_err());
        assert!(n_subspace(&g, &d, ALPHA, BETA | GAMMA).is_err());
    }
}
