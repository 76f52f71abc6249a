//! Spin-resolved scattering of a non-relativistic electron off a potential
//! step, solved by direct boundary matching and cross-checked against the
//! printed closed forms.

mod amplitudes;
mod coefficients;
mod currents;
mod problem;
pub mod representation;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::eigensystem::EigenError;

pub use amplitudes::{
    boundary_spinors, closed_form_amplitudes, continuity_residual_1d, solve_amplitudes_linear,
    solve_linear_detailed, AmplitudeSet, LinearSolution,
};
pub use coefficients::{
    closed_form_coefficients, coefficients, qm_reference, raw_coefficients, QmReference,
    ScatteringCoefficients,
};
pub use currents::{current_bilinear, currents, printed_currents, CurrentDensities};
pub use problem::{
    region_wavefunctions, Branch, EvanescentState, RegionStates, StepProblem, TransmittedBasis,
};

/// Relative half-width of the rejected band around `E = V0`.
pub const THRESHOLD_EPS: f64 = 1e-9;
/// Below `V0/E` of this the printed `C/A` loses about half its digits.
pub const SMALL_V0_FLOOR: f64 = 1e-6;
/// Relative distance from `V0 - E = m` treated as the mass pole.
pub const MASS_POLE_EPS: f64 = 1e-12;
pub const UNITARITY_TOL: f64 = 1e-12;
/// Allowed excursion of a probability outside `[0, 1]` before clamping.
pub const COEFFICIENT_TOL: f64 = 1e-12;
/// Largest accepted mismatch at `z = 0` after a solve, with `A = 1`.
pub const CONTINUITY_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("threshold degeneracy: E = {energy} eV is within 1e-9 of V0 = {v0} eV, transmitted momentum vanishes")]
    ThresholdDegeneracy { energy: f64, v0: f64 },
    #[error("mass pole: V0 - E = m (E = {energy} eV, V0 = {v0} eV, m = {mass} eV) makes the decaying spinor singular")]
    MassPole { energy: f64, v0: f64, mass: f64 },
    #[error("cancellation risk: V0/E = {v0_over_e:.3e} is below 1e-6, use the linear solve")]
    CancellationRisk { v0_over_e: f64 },
    #[error("closed form unavailable: {0}")]
    ClosedFormUnavailable(&'static str),
    #[error("coefficient {name} = {value} lies outside [0, 1]")]
    CoefficientOutOfRange { name: &'static str, value: f64 },
    #[error("coefficients sum to {sum}, not 1")]
    UnitarityViolation { sum: f64 },
    #[error("E = {energy} eV does not exceed V0 = {v0} eV")]
    NotPropagating { energy: f64, v0: f64 },
    #[error("boundary mismatch {residual:.3e} after solve")]
    ContinuityViolation { residual: f64 },
}

/// Everything computed for one step problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Analysis {
    pub problem: StepProblem,
    #[serde(skip)]
    pub amplitudes: AmplitudeSet,
    pub coefficients: ScatteringCoefficients,
    /// `None` for spin-down incidence or in the cancellation region.
    pub closed_form: Option<ScatteringCoefficients>,
    pub currents: CurrentDensities,
    pub printed_currents: CurrentDensities,
    pub qm: Option<QmReference>,
    pub continuity_residual: f64,
}

/// Linear solve, validated coefficients, currents and references.
pub fn analyze(p: &StepProblem) -> Result<Analysis, ScatteringError> {
    let sol = solve_linear_detailed(p)?;
    let residual = sol.continuity_residual();
    if !(residual <= CONTINUITY_TOL) {
        return Err(ScatteringError::ContinuityViolation { residual });
    }
    let amps = sol.amplitudes;
    let coeffs = coefficients(p, &amps)?;
    let j = currents(p, &amps)?;
    let qm = match p.branch() {
        Branch::Propagating => Some(qm_reference(p.energy(), p.v0())?),
        Branch::Evanescent => None,
    };
    Ok(Analysis {
        problem: *p,
        amplitudes: amps,
        coefficients: coeffs,
        closed_form: closed_form_coefficients(p).ok(),
        currents: j,
        printed_currents: printed_currents(p, &amps),
        qm,
        continuity_residual: residual,
    })
}
