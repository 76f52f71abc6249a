use serde::{Deserialize, Serialize};

use crate::eigensystem::positive;

use super::amplitudes::{closed_form_amplitudes, AmplitudeSet};
use super::problem::{Branch, StepProblem};
use super::{ScatteringError, COEFFICIENT_TOL, UNITARITY_TOL};

/// Spin-resolved probabilities. Index 1 is the incident spin preserved,
/// index 2 is spin flipped (for a spin-up electron).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScatteringCoefficients {
    Propagating { t1: f64, t2: f64, r1: f64, r2: f64 },
    Evanescent { r1_prime: f64, r2_prime: f64 },
}

impl ScatteringCoefficients {
    pub fn branch(&self) -> Branch {
        match self {
            Self::Propagating { .. } => Branch::Propagating,
            Self::Evanescent { .. } => Branch::Evanescent,
        }
    }

    /// `T1 + T2`, zero below the step.
    pub fn transmission(&self) -> f64 {
        match *self {
            Self::Propagating { t1, t2, .. } => t1 + t2,
            Self::Evanescent { .. } => 0.0,
        }
    }

    pub fn reflection(&self) -> f64 {
        match *self {
            Self::Propagating { r1, r2, .. } => r1 + r2,
            Self::Evanescent { r1_prime, r2_prime } => r1_prime + r2_prime,
        }
    }

    /// Reflection into spin up (`R1` or `R1'`).
    pub fn reflected_up(&self) -> f64 {
        match *self {
            Self::Propagating { r1, .. } => r1,
            Self::Evanescent { r1_prime, .. } => r1_prime,
        }
    }

    /// Reflection into spin down (`R2` or `R2'`).
    pub fn reflected_down(&self) -> f64 {
        match *self {
            Self::Propagating { r2, .. } => r2,
            Self::Evanescent { r2_prime, .. } => r2_prime,
        }
    }

    pub fn sum(&self) -> f64 {
        self.transmission() + self.reflection()
    }

    pub fn values(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Self::Propagating { t1, t2, r1, r2 } => {
                vec![("t1", t1), ("t2", t2), ("r1", r1), ("r2", r2)]
            }
            Self::Evanescent { r1_prime, r2_prime } => {
                vec![("r1_prime", r1_prime), ("r2_prime", r2_prime)]
            }
        }
    }

    /// Range and sum-rule check, then clamping of round-off excursions to
    /// `[0, 1]`.
    pub fn validated(self) -> Result<Self, ScatteringError> {
        for (name, value) in self.values() {
            if !(-COEFFICIENT_TOL..=1.0 + COEFFICIENT_TOL).contains(&value) {
                return Err(ScatteringError::CoefficientOutOfRange { name, value });
            }
        }
        let sum = self.sum();
        if !((sum - 1.0).abs() <= UNITARITY_TOL) {
            return Err(ScatteringError::UnitarityViolation { sum });
        }
        let c = |x: f64| x.clamp(0.0, 1.0);
        Ok(match self {
            Self::Propagating { t1, t2, r1, r2 } => Self::Propagating {
                t1: c(t1),
                t2: c(t2),
                r1: c(r1),
                r2: c(r2),
            },
            Self::Evanescent { r1_prime, r2_prime } => Self::Evanescent {
                r1_prime: c(r1_prime),
                r2_prime: c(r2_prime),
            },
        })
    }
}

/// Probabilities from amplitude ratios, without validation.
///
/// Above the step the transmitted terms carry the flux factor
/// `(E + m) sqrt(E - V0) / ((E - V0 + m) sqrt(E))`.
pub fn raw_coefficients(p: &StepProblem, amps: &AmplitudeSet) -> ScatteringCoefficients {
    let r1 = amps.reflected_up.norm_sqr();
    let r2 = amps.reflected_down.norm_sqr();
    match p.flux_factor() {
        Some(f) => ScatteringCoefficients::Propagating {
            t1: f * amps.transmitted_up.norm_sqr(),
            t2: f * amps.transmitted_down.norm_sqr(),
            r1,
            r2,
        },
        None => ScatteringCoefficients::Evanescent {
            r1_prime: r1,
            r2_prime: r2,
        },
    }
}

/// Validated probabilities for `amps` solved on `p`.
pub fn coefficients(
    p: &StepProblem,
    amps: &AmplitudeSet,
) -> Result<ScatteringCoefficients, ScatteringError> {
    raw_coefficients(p, amps).validated()
}

/// The printed coefficient formulas, spin-up incident only.
///
/// Above the step these are the expanded `T1, T2, R1, R2`; below it
/// `R1' = (E - m)^2 / (E + m)^2` and `R2' = 4Em / (E + m)^2`.
pub fn closed_form_coefficients(p: &StepProblem) -> Result<ScatteringCoefficients, ScatteringError> {
    // shares the spin and cancellation guards of the amplitude path
    closed_form_amplitudes(p)?;
    let (e, v, m) = (p.energy(), p.v0(), p.mass());
    let em2 = (e + m) * (e + m);
    let raw = match p.branch() {
        Branch::Propagating => {
            let q = (e * (e - v)).sqrt();
            let den2 = (-2.0 * e - 2.0 * q + v).powi(2);
            let bracket = e * e + m * q - e * (m + q + v);
            let outer = (e + m) * (e + m - v);
            ScatteringCoefficients::Propagating {
                t1: 4.0 * (1.0 - v / e).sqrt() * bracket * bracket / (outer * v * v),
                t2: 4.0 * m * q * v * v / (outer * den2),
                r1: (e - m).powi(2) * v * v / (em2 * den2),
                r2: 4.0 * e * m * v * v / (em2 * den2),
            }
        }
        Branch::Evanescent => ScatteringCoefficients::Evanescent {
            r1_prime: (e - m).powi(2) / em2,
            r2_prime: 4.0 * e * m / em2,
        },
    };
    raw.validated()
}

/// Spinless transmission and reflection probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QmReference {
    pub t_qm: f64,
    pub r_qm: f64,
}

/// `T = 4 k1 k2 / (k1 + k2)^2`, `R = ((k1 - k2)/(k1 + k2))^2` with
/// `k1 = sqrt(E)`, `k2 = sqrt(E - V0)`. Requires `E > V0 > 0`.
pub fn qm_reference(energy: f64, v0: f64) -> Result<QmReference, ScatteringError> {
    positive("energy", energy)?;
    positive("v0", v0)?;
    if energy <= v0 {
        return Err(ScatteringError::NotPropagating { energy, v0 });
    }
    let k1 = energy.sqrt();
    let k2 = (energy - v0).sqrt();
    let s = (k1 + k2) * (k1 + k2);
    Ok(QmReference {
        t_qm: 4.0 * k1 * k2 / s,
        r_qm: (k1 - k2) * (k1 - k2) / s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::{Spin, ELECTRON_MASS_EV as ME};
    use crate::scattering::solve_amplitudes_linear;

    fn linear(e: f64, v: f64) -> ScatteringCoefficients {
        let p = StepProblem::electron(e, v).unwrap();
        coefficients(&p, &solve_amplitudes_linear(&p).unwrap()).unwrap()
    }

    #[test]
    fn frozen_values_at_twice_the_step() {
        // mpmath at 40 digits
        let ScatteringCoefficients::Propagating { t1, r1, .. } = linear(200.0, 100.0) else {
            panic!("propagating");
        };
        assert!((r1 - 0.029_391_201_765_397).abs() < 1e-13);
        assert!((t1 - 0.970_530_180_010_37).abs() < 1e-13);
    }

    #[test]
    fn frozen_value_below_step() {
        let c = linear(50.0, 100.0);
        assert!((c.reflected_up() - 0.999_608_686_345_206_6).abs() < 1e-14);
        assert_eq!(c.transmission(), 0.0);
    }

    #[test]
    fn qm_reference_at_twice_the_step() {
        let q = qm_reference(200.0, 100.0).unwrap();
        let s2 = 2f64.sqrt();
        assert!((q.t_qm - 4.0 * s2 / (1.0 + s2).powi(2)).abs() < 1e-15);
        assert!((q.t_qm - 0.970_563).abs() < 1e-6);
        assert!((q.t_qm + q.r_qm - 1.0).abs() < 1e-15);
        assert!(qm_reference(50.0, 100.0).is_err());
    }

    #[test]
    fn qm_limits() {
        let near = qm_reference(100.0 * (1.0 + 1e-12), 100.0).unwrap();
        assert!(near.t_qm < 1e-5 && near.r_qm > 1.0 - 1e-5);
        let far = qm_reference(1.0, 1e-12).unwrap();
        assert!(far.t_qm > 1.0 - 1e-12);
    }

    #[test]
    fn evanescent_at_e_equal_m() {
        let p = StepProblem::new(1.0, 3.0, 1.0, Spin::Up).unwrap();
        let c = coefficients(&p, &solve_amplitudes_linear(&p).unwrap()).unwrap();
        assert!(c.reflected_up().abs() < 1e-15);
        assert!((c.reflected_down() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn near_threshold_transmission_is_small() {
        // T rises like sqrt(E - V0); 1 + 1e-6 still transmits 4e-3
        let c = linear(100.0 * (1.0 + 5e-8), 100.0);
        assert!(c.transmission() <= 1e-3, "{c:?}");
        assert!(c.reflection() >= 1.0 - 1e-3);
        let c = linear(100.0 * (1.0 + 1e-6), 100.0);
        assert!((c.transmission() - 3.99e-3).abs() < 1e-4);
    }

    #[test]
    fn closed_forms_agree_with_linear() {
        for (e, v) in [(200.0, 100.0), (1.5e5, 1e5), (3e6, 1e6), (40.0, 100.0), (2e5, 1e6)] {
            let p = StepProblem::electron(e, v).unwrap();
            let a = linear(e, v);
            let b = closed_form_coefficients(&p).unwrap();
            for ((_, x), (_, y)) in a.values().into_iter().zip(b.values()) {
                assert!((x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1e-300), "{e} {v}");
            }
        }
    }

    #[test]
    fn evanescent_printed_formulas() {
        let (e, v) = (2.0e5, 1.0e6);
        let c = linear(e, v);
        let em2 = (e + ME) * (e + ME);
        assert!((c.reflected_up() - (e - ME).powi(2) / em2).abs() < 1e-12);
        assert!((c.reflected_down() - 4.0 * e * ME / em2).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_and_clamps() {
        let bad = ScatteringCoefficients::Evanescent {
            r1_prime: 0.5,
            r2_prime: 0.6,
        };
        assert!(matches!(
            bad.validated(),
            Err(ScatteringError::UnitarityViolation { .. })
        ));
        let neg = ScatteringCoefficients::Evanescent {
            r1_prime: -1e-6,
            r2_prime: 1.0,
        };
        assert!(matches!(
            neg.validated(),
            Err(ScatteringError::CoefficientOutOfRange { .. })
        ));
        let tiny = ScatteringCoefficients::Evanescent {
            r1_prime: -1e-13,
            r2_prime: 1.0 + 1e-13,
        };
        let clamped = tiny.validated().unwrap();
        assert_eq!(clamped.reflected_up(), 0.0);
        assert_eq!(clamped.reflected_down(), 1.0);
    }

    #[test]
    fn json_field_names() {
        let c = ScatteringCoefficients::Propagating {
            t1: 0.5,
            t2: 0.0,
            r1: 0.5,
            r2: 0.0,
        };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"t1":0.5,"t2":0.0,"r1":0.5,"r2":0.0}"#);
        let e = ScatteringCoefficients::Evanescent {
            r1_prime: 1.0,
            r2_prime: 0.0,
        };
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"r1_prime":1.0,"r2_prime":0.0}"#
        );
    }
}
