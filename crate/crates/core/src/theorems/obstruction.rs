use super::{nil_plus_roots, toral_span, IdealReport, LemmaId};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::rootspace::{classify_delta, is_triangulable, DeltaLabel, RootDecomposition};

const A: u8 = 0b001;
const B: u8 = 0b010;
const C: u8 = 0b100;

/// Toral subspace, as sums of basis elements, that must contain the torus
/// part of every self-bracket `[g_xi, g_xi]` when the roots are in canonical
/// form `label`.
pub fn t0_table(label: DeltaLabel) -> Option<&'static [u8]> {
    match label {
        DeltaLabel::D1 | DeltaLabel::D3 => Some(&[]),
        DeltaLabel::D2 => Some(&[A, B]),
        DeltaLabel::D4 => Some(&[B, C]),
        DeltaLabel::D5 => Some(&[A | B, C]),
        DeltaLabel::D6 => Some(&[A | C, B | C]),
        DeltaLabel::D7 => Some(&[A, B | C]),
        DeltaLabel::D0 | DeltaLabel::NonStandardBasis => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCheck {
    pub label: DeltaLabel,
    pub basis_change: [u8; 3],
    pub t0: Subspace,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaObstruction {
    pub label: DeltaLabel,
    /// Sum over roots of the torus projections of `[g_xi, g_xi]`.
    pub t_sum: Subspace,
    /// One check per canonical form in the orbit of the root set.
    pub checks: Vec<ObstructionCheck>,
}

impl DeltaObstruction {
    /// Every containment holds and every bounding space has dimension at
    /// most 2, so the self-brackets cannot reach the whole torus.
    pub fn holds(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.contained && c.t0.dim() <= 2)
    }
}

fn self_bracket_sum(g: &LieAlgebra, d: &RootDecomposition) -> Result<Subspace> {
    let mut acc = g.zero_subspace();
    for s in d.roots.values() {
        acc = acc.sum(&g.bracket_span(s, s)?)?;
    }
    Ok(acc)
}

/// For a rank-3 triangulable decomposition whose roots form a proper subset of
/// all seven, compare the torus part of the self-brackets with the bounding
/// space of each canonical form in the orbit.
pub fn delta_obstruction(g: &LieAlgebra, d: &RootDecomposition) -> Result<DeltaObstruction> {
    let class = classify_delta(d);
    if matches!(class.label, DeltaLabel::D0 | DeltaLabel::NonStandardBasis) {
        return Err(Error::Precondition(format!("root set is {}, not one of Delta1..Delta7", class.label.name())));
    }
    if !is_triangulable(g, d)? {
        return Err(Error::Precondition("Cartan subalgebra is not triangulable".into()));
    }
    let t_sum = d.project_subspace_to_torus(&self_bracket_sum(g, d)?)?;
    let mut checks = Vec::new();
    for &(label, p) in &class.alternatives {
        let relabeled = d.change_basis(&p)?;
        let t0 = toral_span(&relabeled, t0_table(label).expect("labels 1..7"))?;
        let contained = t_sum.is_subspace_of(&t0)?;
        checks.push(ObstructionCheck { label, basis_change: p, t0, contained });
    }
    Ok(DeltaObstruction { label: class.label, t_sum, checks })
}

/// `sum [g_xi, g_xi] + n + sum g_xi`, an ideal whenever `n` is an ideal of
/// the Cartan subalgebra.
pub fn obstruction_ideal(g: &LieAlgebra, d: &RootDecomposition) -> Result<IdealReport> {
    let s = self_bracket_sum(g, d)?.sum(&nil_plus_roots(d, |_| true)?)?;
    IdealReport::new(g, LemmaId::DeltaObstruction, s, None)
}
