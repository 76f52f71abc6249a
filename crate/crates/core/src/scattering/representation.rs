//! The whole boundary-matching pipeline rebuilt from the spectral
//! projectors of a chosen `eta` representation, with probabilities taken
//! as current ratios. Under `rep1` this reproduces the main path; under
//! `rep2` it is an experiment whose outcome is reported, not asserted.

use serde::Serialize;

use crate::algebra::{solve_linear_4x4, Complex, ComplexMatrix4, EtaRepresentation, Spinor4};
use crate::eigensystem::{momentum_operator, spin_labelled_basis, Spin};

use super::amplitudes::decaying_span;
use super::currents::current_bilinear;
use super::problem::{Branch, StepProblem};
use super::ScatteringError;

/// Agreement threshold used by [`compare_representations`].
pub const REPRESENTATION_AGREEMENT_TOL: f64 = 1e-9;

/// Current-ratio probabilities for one representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluxCoefficients {
    pub representation: EtaRepresentation,
    pub r_up: f64,
    pub r_down: f64,
    pub t_up: f64,
    pub t_down: f64,
    /// Current of the full reflected wave over the incident current.
    pub reflected_total: f64,
    /// Current of the full transmitted wave over the incident current.
    pub transmitted_total: f64,
}

impl FluxCoefficients {
    /// `reflected_total + transmitted_total`, the representation-free
    /// statement of current conservation.
    pub fn sum(&self) -> f64 {
        self.reflected_total + self.transmitted_total
    }

    /// Interference between the two spin-labelled terms, visible when the
    /// labelled spinors are not current-orthogonal.
    pub fn spin_cross_term(&self) -> f64 {
        (self.r_up + self.r_down + self.t_up + self.t_down) - self.sum()
    }

    fn values(&self) -> [f64; 4] {
        [self.r_up, self.r_down, self.t_up, self.t_down]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepresentationComparison {
    pub energy: f64,
    pub v0: f64,
    pub rep1: FluxCoefficients,
    pub rep2: FluxCoefficients,
    /// Largest difference between the spin-labelled values.
    pub max_abs_difference: f64,
    /// Difference of the total reflection.
    pub total_reflection_difference: f64,
    pub agree: bool,
}

/// Runs the projector pipeline for `rep`.
///
/// Spin labels are assigned by the upper two components, as in the
/// printed spinors. Below the step the transmitted probabilities are the
/// current of the matched decaying wave, split evenly. The per-label
/// values include no interference term, the totals do.
pub fn flux_coefficients(
    p: &StepProblem,
    rep: EtaRepresentation,
) -> Result<FluxCoefficients, ScatteringError> {
    let (e, m) = (p.energy(), p.mass());
    let p1 = Complex::new(p.incident_momentum(), 0.0);
    let region_one = momentum_operator(e, m, rep);
    let forward = spin_labelled_basis(&region_one, p1)?;
    let [r_up, r_down] = spin_labelled_basis(&region_one, -p1)?;
    let incident = match p.incident_spin() {
        Spin::Up => forward[0],
        Spin::Down => forward[1],
    };
    let [t_a, t_b] = match p.branch() {
        Branch::Propagating => {
            let op = momentum_operator(p.kinetic_beyond_step(), m, rep);
            spin_labelled_basis(&op, p.transmitted_eigenvalue())?
        }
        Branch::Evanescent => decaying_span(p, rep)?,
    };
    let system = ComplexMatrix4::from_columns([r_up, r_down, -t_a, -t_b]);
    let x = solve_linear_4x4(&system, &-incident)?;

    let j = |psi: Spinor4| current_bilinear(&psi, rep);
    let j_inc = j(incident);
    let (t_up, t_down) = match p.branch() {
        Branch::Propagating => (j(t_a * x[2]) / j_inc, j(t_b * x[3]) / j_inc),
        Branch::Evanescent => {
            let t = j(t_a * x[2] + t_b * x[3]) / j_inc;
            (t / 2.0, t / 2.0)
        }
    };
    Ok(FluxCoefficients {
        representation: rep,
        r_up: -j(r_up * x[0]) / j_inc,
        r_down: -j(r_down * x[1]) / j_inc,
        t_up,
        t_down,
        reflected_total: -j(r_up * x[0] + r_down * x[1]) / j_inc,
        transmitted_total: j(t_a * x[2] + t_b * x[3]) / j_inc,
    })
}

/// Both representations side by side.
pub fn compare_representations(p: &StepProblem) -> Result<RepresentationComparison, ScatteringError> {
    let rep1 = flux_coefficients(p, EtaRepresentation::Rep1)?;
    let rep2 = flux_coefficients(p, EtaRepresentation::Rep2)?;
    let max_abs_difference = rep1
        .values()
        .iter()
        .zip(rep2.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(RepresentationComparison {
        energy: p.energy(),
        v0: p.v0(),
        rep1,
        rep2,
        max_abs_difference,
        total_reflection_difference: (rep1.reflected_total - rep2.reflected_total).abs(),
        agree: max_abs_difference <= REPRESENTATION_AGREEMENT_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{coefficients, solve_amplitudes_linear};

    #[test]
    fn rep1_pipeline_reproduces_main_path() {
        for (e, v) in [(200.0, 100.0), (2e6, 1e6), (50.0, 100.0), (3e5, 1e6)] {
            let p = StepProblem::electron(e, v).unwrap();
            let flux = flux_coefficients(&p, EtaRepresentation::Rep1).unwrap();
            let main = coefficients(&p, &solve_amplitudes_linear(&p).unwrap()).unwrap();
            assert!((flux.r_up - main.reflected_up()).abs() <= 1e-11, "{e}");
            assert!((flux.r_down - main.reflected_down()).abs() <= 1e-11);
            assert!((flux.t_up + flux.t_down - main.transmission()).abs() <= 1e-11);
        }
    }

    #[test]
    fn total_current_is_conserved_in_both_representations() {
        for (e, v) in [(200.0, 100.0), (2e6, 1e6), (50.0, 100.0)] {
            let p = StepProblem::electron(e, v).unwrap();
            for rep in EtaRepresentation::ALL {
                let flux = flux_coefficients(&p, rep).unwrap();
                assert!((flux.sum() - 1.0).abs() <= 1e-10, "{rep} {flux:?}");
            }
        }
    }

    #[test]
    fn rep1_labels_do_not_interfere() {
        let p = StepProblem::electron(200.0, 100.0).unwrap();
        let flux = flux_coefficients(&p, EtaRepresentation::Rep1).unwrap();
        assert!(flux.spin_cross_term().abs() <= 1e-12);
    }
}
