use serde::Serialize;

use super::{nil_plus_roots, toral_span, Containment, IdealReport, LemmaId};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{vector, Matrix, Subspace};
use crate::restricted::{square, TwoMap};
use crate::rootspace::{evaluate, extended_root, root_name, square_span, Root, RootDecomposition, ALPHA, BETA, GAMMA};

fn require_centerless(g: &LieAlgebra) -> Result<()> {
    if g.center().is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition("algebra has a nonzero center".into()))
    }
}

fn require_root(d: &RootDecomposition, r: Root) -> Result<()> {
    if d.dim_of(r) == 0 {
        return Err(Error::Precondition(format!("{} is not a root", root_name(r))));
    }
    Ok(())
}

/// Rank over GF(2) of a set of root masks.
pub(crate) fn mask_rank(roots: impl IntoIterator<Item = Root>) -> usize {
    let mut basis = [0u8; 8];
    let mut rank = 0;
    for mut r in roots {
        while r != 0 {
            let lead = 7 - r.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = r;
                rank += 1;
                break;
            }
            r ^= basis[lead];
        }
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimBound {
    /// Rank of the torus.
    pub rank: usize,
    /// Rank of the span of the roots.
    pub root_rank: usize,
    pub dim: usize,
    /// Roots span the dual of the torus and `dim >= 2 * rank`.
    pub holds: bool,
}

/// The roots of a centerless algebra span the dual of the torus, which forces
/// `dim g >= 2r`.
pub fn dim_bound(g: &LieAlgebra, d: &RootDecomposition) -> Result<DimBound> {
    require_centerless(g)?;
    let rank = d.rank();
    let root_rank = mask_rank(d.delta());
    let dim = g.dim();
    Ok(DimBound { rank, root_rank, dim, holds: root_rank == rank && dim >= 2 * rank })
}

/// `n` plus every root space, when all root spaces are lines.
pub fn dim1_ideal(g: &LieAlgebra, d: &RootDecomposition) -> Result<IdealReport> {
    require_centerless(g)?;
    if let Some((&r, _)) = d.roots.iter().find(|(_, s)| s.dim() != 1) {
        return Err(Error::Precondition(format!("root space {} is not one-dimensional", root_name(r))));
    }
    IdealReport::new(g, LemmaId::Dim1, nil_plus_roots(d, |_| true)?, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `eta` vanishes on every square of `g_xi`.
    HypothesisNotMet,
    /// `x` in `g_xi` with `eta(x^[2]) != 0`; `ad x` maps `g_eta` and
    /// `g_{xi+eta}` injectively into each other.
    Equal {
        witness: Vec<Fe>,
        forward_rank: usize,
        backward_rank: usize,
        dim_eta: usize,
        dim_sum: usize,
    },
}

/// If some square of `g_xi` is not killed by `eta`, then
/// `dim g_eta = dim g_{xi+eta}`.
pub fn square_pairing(g: &LieAlgebra, tm: &TwoMap, d: &RootDecomposition, xi: Root, eta: Root) -> Result<Pairing> {
    require_root(d, xi)?;
    require_root(d, eta)?;
    let f = g.field();
    let cov = extended_root(d, eta);
    let basis = d.root_space(xi).basis_vectors();
    let mut witness = None;
    for b in &basis {
        if !evaluate(f, &cov, &square(g, tm, b)?).is_zero() {
            witness = Some(b.clone());
            break;
        }
    }
    if witness.is_none() {
        'outer: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if !evaluate(f, &cov, &g.bracket(&basis[i], &basis[j])?).is_zero() {
                    witness = Some(vector::add(&basis[i], &basis[j]));
                    break 'outer;
                }
            }
        }
    }
    let Some(x) = witness else {
        return Ok(Pairing::HypothesisNotMet);
    };
    let image_rank = |src: &Subspace| -> Result<usize> {
        let imgs = src.basis_vectors().iter().map(|y| g.bracket(&x, y)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(f, g.dim(), &imgs)?.dim())
    };
    let g_eta = d.root_space(eta);
    let g_sum = d.root_space(xi ^ eta);
    Ok(Pairing::Equal {
        forward_rank: image_rank(&g_eta)?,
        backward_rank: image_rank(&g_sum)?,
        dim_eta: g_eta.dim(),
        dim_sum: g_sum.dim(),
        witness: x,
    })
}

/// Toral basis `t'` dual to `roots` completed by coordinate roots:
/// `roots[i](t'_j) = [i == j]`.
fn dual_basis(d: &RootDecomposition, roots: &[Root]) -> Result<Vec<Vec<Fe>>> {
    let r = d.rank();
    let mut rows: Vec<Root> = roots.to_vec();
    for i in 0..r {
        if rows.len() == r {
            break;
        }
        let cand = 1 << i;
        if mask_rank(rows.iter().copied().chain([cand])) > rows.len() {
            rows.push(cand);
        }
    }
    let f = Field::GF2;
    let entries: Vec<Vec<Fe>> = rows.iter().map(|&m| (0..r).map(|j| Fe((m >> j & 1) as u16)).collect()).collect();
    let inv = Matrix::from_rows(f, r, &entries)?
        .inverse()
        .ok_or_else(|| Error::Precondition("roots are linearly dependent".into()))?;
    // t'_j = sum_m (R^{-1})_{m j} t_m
    let kf = d.cartan.field();
    let n = d.cartan.ambient();
    Ok((0..r)
        .map(|j| {
            let coeffs: Vec<Fe> = (0..r).map(|m| inv.get(m, j)).collect();
            vector::combine(kf, n, &coeffs, d.toral_basis())
        })
        .collect())
}

/// Squares of `g_{alpha_1}` lie in `I + n` with `I` spanned by the dual basis
/// vectors beyond the given roots, provided
/// `dim g_{alpha_i} != dim g_{alpha_1 + alpha_i}` for every other root.
pub fn square_containment(
    g: &LieAlgebra,
    tm: &TwoMap,
    d: &RootDecomposition,
    alpha1: Root,
    others: &[Root],
) -> Result<Containment> {
    let mut roots = vec![alpha1];
    roots.extend_from_slice(others);
    for &r in &roots {
        require_root(d, r)?;
    }
    if mask_rank(roots.iter().copied()) != roots.len() {
        return Err(Error::Precondition("roots are linearly dependent".into()));
    }
    for &a in others {
        if d.dim_of(a) == d.dim_of(alpha1 ^ a) {
            return Err(Error::Precondition(format!(
                "dim g_{} equals dim g_{}",
                root_name(a),
                root_name(alpha1 ^ a)
            )));
        }
    }
    let dual = dual_basis(d, &roots)?;
    let i_space = Subspace::span(g.field(), g.dim(), &dual[roots.len()..])?;
    Containment::new(square_span(g, tm, d, alpha1)?, i_space.sum(&d.nil)?)
}

/// Bound on `[g_xi, g_xi]` read off from the shape of `xi` relative to the
/// coordinate roots `a, b, c`, which must all be roots.
pub fn self_bracket_bound(g: &LieAlgebra, d: &RootDecomposition, xi: Root) -> Result<Containment> {
    if d.rank() != 3 {
        return Err(Error::Precondition(format!("torus rank {} is not 3", d.rank())));
    }
    for r in [ALPHA, BETA, GAMMA, xi] {
        require_root(d, r)?;
    }
    let in_delta = |r: Root| d.dim_of(r) > 0;
    let masks: Vec<u8> = match xi.count_ones() {
        1 => [ALPHA, BETA, GAMMA].into_iter().filter(|&s| in_delta(s ^ xi)).collect(),
        2 => {
            let mut m = vec![xi];
            if in_delta(ALPHA ^ BETA ^ GAMMA) {
                m.push(xi ^ 0b111);
            }
            m
        }
        _ => vec![ALPHA | GAMMA, BETA | GAMMA],
    };
    let gx = d.root_space(xi);
    Containment::new(g.bracket_span(&gx, &gx)?, toral_span(d, &masks)?.sum(&d.nil)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rootspace::{classify_delta, root_decomposition};
    use crate::tori::{maximal_torus, TorusMode};

    fn setup(name: &str) -> (LieAlgebra, TwoMap, RootDecomposition) {
        let (g, tm) = fixtures::by_name(name).unwrap();
        let t = maximal_torus(&g, &tm, TorusMode::Exhaustive).unwrap();
        let d = root_decomposition(&g, &tm, &t).unwrap();
        (g, tm, d)
    }

    #[test]
    fn dim_bound_examples() {
        let (g, _, d) = setup("F6");
        assert_eq!(dim_bound(&g, &d).unwrap(), DimBound { rank: 3, root_rank: 3, dim: 6, holds: true });
        let (g, _, d) = setup("F7");
        assert!(dim_bound(&g, &d).unwrap().holds);
        let (g, _, d) = setup("torus:3");
        assert!(matches!(dim_bound(&g, &d), Err(Error::Precondition(_))));
    }

    #[test]
    fn dim1_examples() {
        let (g, _, d) = setup("F6");
        let r = dim1_ideal(&g, &d).unwrap();
        assert_eq!(r.subspace.dim(), 3);
        assert!(r.is_witness());
        assert_eq!(g.ideal_closure(&r.subspace).unwrap(), r.subspace);
        let (g, _, d) = setup("F7");
        assert_eq!(dim1_ideal(&g, &d).unwrap().subspace.dim(), 7);
        let (g, _, d) = setup("U2");
        assert!(dim1_ideal(&g, &d).is_err());
    }

    #[test]
    fn pairing_trivial_on_f6() {
        let (g, tm, d) = setup("F6");
        for xi in d.delta() {
            for eta in d.delta() {
                assert_eq!(square_pairing(&g, &tm, &d, xi, eta).unwrap(), Pairing::HypothesisNotMet);
            }
        }
    }

    #[test]
    fn pairing_on_gl3() {
        // [E12, E21] = E11 + E22 and the root e1+e3 takes value 1 on it
        let (g, tm, d) = setup("gl:3");
        let mut found = 0;
        for xi in d.delta() {
            for eta in d.delta() {
                if let Pairing::Equal { witness, forward_rank, backward_rank, dim_eta, dim_sum } =
                    square_pairing(&g, &tm, &d, xi, eta).unwrap()
                {
                    found += 1;
                    assert_eq!((forward_rank, backward_rank), (dim_eta, dim_sum));
                    assert_eq!(dim_eta, dim_sum);
                    let s = square(&g, &tm, &witness).unwrap();
                    assert!(!evaluate(g.field(), &extended_root(&d, eta), &s).is_zero());
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn containment_on_u2() {
        let (g, tm, d) = setup("U2");
        let mut checked = 0;
        for a1 in d.delta() {
            for a2 in d.delta() {
                if a2 != a1 && d.dim_of(a2) != d.dim_of(a1 ^ a2) {
                    let c = square_containment(&g, &tm, &d, a1, &[a2]).unwrap();
                    assert!(c.holds);
                    assert!(c.bound.dim() - d.nil.dim() <= 1);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn dual_basis_is_dual() {
        let (_, _, d) = setup("F7");
        let roots = [ALPHA ^ BETA, GAMMA];
        let dual = dual_basis(&d, &roots).unwrap();
        let f = d.cartan.field();
        for (i, &r) in roots.iter().enumerate() {
            let cov = extended_root(&d, r);
            for (j, t) in dual.iter().enumerate() {
                assert_eq!(evaluate(f, &cov, t) == Fe::ONE, i == j);
            }
        }
    }

    #[test]
    fn self_bracket_bound_on_canonical_fixtures() {
        for name in ["F6", "Delta2", "Delta6", "U2", "F7"] {
            let (g, _, d) = setup(name);
            let p = classify_delta(&d).basis_change.unwrap();
            let d = d.change_basis(&p).unwrap();
            for xi in d.delta() {
                assert!(self_bracket_bound(&g, &d, xi).unwrap().holds, "{name} {xi}");
            }
        }
    }
}
