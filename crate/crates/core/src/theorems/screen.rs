use rayon::prelude::*;

use super::bounds::dim1_ideal;
use super::obstruction::{delta_obstruction, obstruction_ideal};
use super::rank3::construct_ideal_rank3;
use super::{IdealReport, LemmaId};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::linalg::Subspace;
use crate::packed::{PackedAlgebra, PackedBasis};
use crate::restricted::TwoMap;
use crate::rootspace::{classify_delta, is_standard, is_triangulable, root_decomposition, DeltaLabel, Root};
use crate::tori::{maximal_torus, TorusMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenResult {
    /// A verified proper nonzero ideal.
    NotSimpleWitness(IdealReport),
    /// Two root spaces of different dimension with no verified ideal.
    DimsUnequal(Root, Root),
    /// Every necessary condition checked here holds. Not a simplicity claim.
    PassesNecessaryConditions,
    OutOfScope(String),
    /// A verified input on which a structural statement failed.
    Contradiction(String),
}

impl ScreenResult {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScreenResult::PassesNecessaryConditions => 0,
            ScreenResult::NotSimpleWitness(_) | ScreenResult::DimsUnequal(..) => 10,
            ScreenResult::OutOfScope(_) => 20,
            ScreenResult::Contradiction(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ScreenResult::NotSimpleWitness(_) => "NotSimpleWitness",
            ScreenResult::DimsUnequal(..) => "DimsUnequal",
            ScreenResult::PassesNecessaryConditions => "PassesNecessaryConditions",
            ScreenResult::OutOfScope(_) => "OutOfScope",
            ScreenResult::Contradiction(_) => "Contradiction",
        }
    }
}

fn witness_or_contradiction(r: IdealReport) -> ScreenResult {
    if r.is_witness() {
        ScreenResult::NotSimpleWitness(r)
    } else {
        ScreenResult::Contradiction(format!(
            "{:?} subspace of dim {} failed verification (ideal {}, proper {}, nonzero {})",
            r.lemma,
            r.subspace.dim(),
            r.verified_ideal,
            r.proper,
            r.nonzero
        ))
    }
}

/// Necessary conditions for simplicity of a rank-3 algebra with triangulable
/// Cartan subalgebra. Never claims simplicity.
pub fn simplicity_screen(g: &LieAlgebra, tm: &TwoMap) -> ScreenResult {
    match screen_inner(g, tm) {
        Ok(r) => r,
        Err(e) => ScreenResult::OutOfScope(e.to_string()),
    }
}

fn screen_inner(g: &LieAlgebra, tm: &TwoMap) -> Result<ScreenResult> {
    let z = g.center();
    if !z.is_zero() {
        if z.is_full() {
            return Ok(ScreenResult::OutOfScope("abelian algebra".into()));
        }
        return Ok(witness_or_contradiction(IdealReport::new(g, LemmaId::Center, z, None)?));
    }
    let t = maximal_torus(g, tm, TorusMode::Exhaustive)?;
    if t.dim() != 3 {
        return Ok(ScreenResult::OutOfScope(format!("toral rank {} is not 3", t.dim())));
    }
    let d = root_decomposition(g, tm, &t)?;
    if !is_triangulable(g, &d)? {
        return Ok(ScreenResult::OutOfScope("Cartan subalgebra is not triangulable".into()));
    }
    if !is_standard(g, &d)? {
        return Ok(ScreenResult::OutOfScope("torus is not standard".into()));
    }
    let class = classify_delta(&d);
    match class.label {
        DeltaLabel::NonStandardBasis => Ok(ScreenResult::Contradiction(
            "centerless algebra whose roots do not span the dual of the torus".into(),
        )),
        DeltaLabel::D0 => {
            let r = construct_ideal_rank3(g, &d)?;
            if r.lemma != LemmaId::None {
                return Ok(witness_or_contradiction(r));
            }
            let dims: Vec<(Root, usize)> = d.roots.iter().map(|(&k, s)| (k, s.dim())).collect();
            if let Some(&(b, _)) = dims.iter().find(|(_, x)| *x != dims[0].1) {
                return Ok(ScreenResult::DimsUnequal(dims[0].0, b));
            }
            if dims[0].1 == 1 {
                return Ok(witness_or_contradiction(dim1_ideal(g, &d)?));
            }
            Ok(ScreenResult::PassesNecessaryConditions)
        }
        _ => {
            let ob = delta_obstruction(g, &d)?;
            if !ob.holds() {
                return Ok(ScreenResult::Contradiction(format!(
                    "{}: torus part of self-brackets escapes the bounding space",
                    ob.label.name()
                )));
            }
            Ok(witness_or_contradiction(obstruction_ideal(g, &d)?))
        }
    }
}

/// Largest `k * n` accepted by [`is_simple`] by default.
pub const SIMPLE_BUDGET_BITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    /// First generator, in enumeration order, whose ideal is proper.
    pub counterexample: Option<Vec<Fe>>,
    /// Index of the counterexample among the `2^(k n) - 1` nonzero
    /// coefficient vectors, or that count when simple. Over GF(2) this is the
    /// number of generators examined.
    pub closures: u64,
}

/// Exhaustive check that every nonzero element generates the whole algebra.
///
/// Over GF(2) every nonzero vector is tried in integer order; over larger
/// fields one vector per line (last nonzero coordinate 1). Any proper nonzero
/// ideal contains a nonzero vector, whose closure is then proper.
pub fn is_simple(g: &LieAlgebra, budget_bits: usize) -> Result<SimplicityVerdict> {
    let n = g.dim();
    let k = g.field().degree() as usize;
    if n <= 1 {
        return Ok(SimplicityVerdict { simple: false, counterexample: None, closures: 0 });
    }
    let bits = k * n;
    if bits > budget_bits || bits > 63 {
        return Err(Error::BudgetExceeded { needed: bits, limit: budget_bits.min(63) });
    }
    let total = 1u64 << bits;
    let first = if k == 1 {
        let packed = PackedAlgebra::new(g, &TwoMap::zero(n))?;
        (1..total)
            .into_par_iter()
            .map_init(|| PackedBasis::new(n), |basis, v| (v, packed.closure_dim(v, basis) < n))
            .find_first(|&(_, proper)| proper)
            .map(|(v, _)| (v, packed.unpack(v)))
    } else {
        let q = 1u64 << k;
        let decode = |mut idx: u64| -> Vec<Fe> {
            (0..n)
                .map(|_| {
                    let c = Fe((idx % q) as u16);
                    idx /= q;
                    c
                })
                .collect()
        };
        (1..total)
            .into_par_iter()
            .filter_map(|idx| {
                let v = decode(idx);
                (v.iter().rev().find(|c| !c.is_zero()) == Some(&Fe::ONE)).then_some((idx, v))
            })
            .map(|(idx, v)| {
                let u = Subspace::span(g.field(), n, std::slice::from_ref(&v)).expect("ambient matches");
                let proper = g.ideal_closure(&u).expect("ambient matches").dim() < n;
                (idx, v, proper)
            })
            .find_first(|(_, _, proper)| *proper)
            .map(|(idx, v, _)| (idx, v))
    };
    Ok(match first {
        Some((idx, v)) => SimplicityVerdict { simple: false, counterexample: Some(v), closures: idx },
        None => SimplicityVerdict { simple: true, counterexample: None, closures: total - 1 },
    })
}
