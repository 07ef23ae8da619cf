//! Rank-3 structure theory: dimension bounds, ideal constructions, the
//! small-root-set obstruction and the simplicity screen.

mod bounds;
mod nsub;
mod obstruction;
mod rank3;
mod screen;

pub use bounds::{dim1_ideal, dim_bound, self_bracket_bound, square_containment, square_pairing, DimBound, Pairing};
pub use nsub::n_subspace;
pub use obstruction::{delta_obstruction, obstruction_ideal, t0_table, DeltaObstruction, ObstructionCheck};
pub use rank3::{construct_ideal_rank3, hypothesis_holds, lemma_for_dims, select_case};
pub use screen::{is_simple, simplicity_screen, ScreenResult, SimplicityVerdict, SIMPLE_BUDGET_BITS};

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::Result;
use crate::field::Fe;
use crate::linalg::{vector, Subspace};
use crate::rootspace::{Root, RootDecomposition};

/// Which construction produced an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    AlphaGtBeta,
    BetaGtXi,
    AlphaBetaGtAlphaGamma,
    BetaGammaGtABG,
    AlphaGammaGtEq,
    GammaGtXi,
    ABGGtAlphaGamma,
    AlphaGammaGtBetaGamma,
    Dim1,
    /// Nonzero center.
    Center,
    /// Self-brackets of root spaces plus `n` plus all root spaces, for a
    /// root set smaller than all seven.
    DeltaObstruction,
    None,
}

impl LemmaId {
    pub const RANK3: [LemmaId; 8] = [
        LemmaId::AlphaGtBeta,
        LemmaId::BetaGtXi,
        LemmaId::AlphaBetaGtAlphaGamma,
        LemmaId::BetaGammaGtABG,
        LemmaId::AlphaGammaGtEq,
        LemmaId::GammaGtXi,
        LemmaId::ABGGtAlphaGamma,
        LemmaId::AlphaGammaGtBetaGamma,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub lemma: LemmaId,
    pub subspace: Subspace,
    pub verified_ideal: bool,
    pub proper: bool,
    pub nonzero: bool,
    /// Toral basis change under which the construction was read off.
    pub basis_change: Option<[u8; 3]>,
}

impl IdealReport {
    pub fn new(g: &LieAlgebra, lemma: LemmaId, subspace: Subspace, basis_change: Option<[u8; 3]>) -> Result<Self> {
        let verified_ideal = g.is_ideal(&subspace)?;
        let proper = subspace.dim() < g.dim();
        let nonzero = subspace.dim() > 0;
        Ok(IdealReport { lemma, subspace, verified_ideal, proper, nonzero, basis_change })
    }

    /// Verified, proper and nonzero.
    pub fn is_witness(&self) -> bool {
        self.verified_ideal && self.proper && self.nonzero
    }
}

/// `[g_xi, g_xi]` (or any subspace) compared against a predicted bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub actual: Subspace,
    pub bound: Subspace,
    pub holds: bool,
}

impl Containment {
    fn new(actual: Subspace, bound: Subspace) -> Result<Self> {
        let holds = actual.is_subspace_of(&bound)?;
        Ok(Containment { actual, bound, holds })
    }
}

/// `sum_{i in mask} t_i` for the decomposition's toral basis.
pub(crate) fn toral_combination(d: &RootDecomposition, mask: u8) -> Vec<Fe> {
    let n = d.cartan.ambient();
    let f = d.cartan.field();
    let mut v = vector::zero(n);
    for (i, t) in d.toral_basis().iter().enumerate() {
        if mask >> i & 1 == 1 {
            vector::axpy(f, &mut v, Fe::ONE, t);
        }
    }
    v
}

pub(crate) fn toral_span(d: &RootDecomposition, masks: &[u8]) -> Result<Subspace> {
    let vs: Vec<Vec<Fe>> = masks.iter().map(|&m| toral_combination(d, m)).collect();
    Subspace::span(d.cartan.field(), d.cartan.ambient(), &vs)
}

/// `n` plus the root spaces selected by `keep`.
pub(crate) fn nil_plus_roots(d: &RootDecomposition, keep: impl Fn(Root) -> bool) -> Result<Subspace> {
    let mut s = d.nil.clone();
    for (&r, space) in &d.roots {
        if keep(r) {
            s = s.sum(space)?;
        }
    }
    Ok(s)
}
