use serde::{Deserialize, Serialize};

use crate::algebra::{eta, eta_dagger, EtaRepresentation, Spinor4};

use super::amplitudes::AmplitudeSet;
use super::problem::{region_wavefunctions, Branch, StepProblem};
use super::ScatteringError;

/// Signed probability currents of the five waves. Reflected currents are
/// negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurrentDensities {
    pub j_inc: f64,
    pub j_refl_up: f64,
    pub j_refl_down: f64,
    pub j_trans_up: f64,
    pub j_trans_down: f64,
}

impl CurrentDensities {
    /// `(|J_r up| + |J_t up| + |J_r down| + |J_t down|) / |J_inc|`
    pub fn conservation_ratio(&self) -> f64 {
        (self.j_refl_up.abs()
            + self.j_trans_up.abs()
            + self.j_refl_down.abs()
            + self.j_trans_down.abs())
            / self.j_inc.abs()
    }

    /// Largest relative difference between corresponding fields, scaled
    /// by `|J_inc|`.
    pub fn max_relative_difference(&self, other: &Self) -> f64 {
        let a = self.fields();
        let b = other.fields();
        let scale = self.j_inc.abs().max(other.j_inc.abs());
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs() / scale)
            .fold(0.0, f64::max)
    }

    pub fn fields(&self) -> [f64; 5] {
        [
            self.j_inc,
            self.j_refl_up,
            self.j_refl_down,
            self.j_trans_up,
            self.j_trans_down,
        ]
    }
}

/// `psi^dag (eta + eta^dag) psi` for the representation `rep`.
pub fn current_bilinear(psi: &Spinor4, rep: EtaRepresentation) -> f64 {
    psi.bilinear(&(eta(rep) + eta_dagger(rep)), psi).re
}

/// Currents from the bilinear on each plane-wave term.
pub fn currents(p: &StepProblem, amps: &AmplitudeSet) -> Result<CurrentDensities, ScatteringError> {
    let rep = EtaRepresentation::Rep1;
    let s = region_wavefunctions(p)?;
    let [t_up, t_down] = s.transmitted.spinors();
    let j = |psi: Spinor4| current_bilinear(&psi, rep);
    let (j_trans_up, j_trans_down) = match p.branch() {
        Branch::Propagating => (
            j(t_up * amps.transmitted_up),
            j(t_down * amps.transmitted_down),
        ),
        // a real exponential carries no current
        Branch::Evanescent => (0.0, 0.0),
    };
    Ok(CurrentDensities {
        j_inc: j(s.incident.spinor),
        j_refl_up: j(s.reflected[0].spinor * amps.reflected_up),
        j_refl_down: j(s.reflected[1].spinor * amps.reflected_down),
        j_trans_up,
        j_trans_down,
    })
}

/// `J_inc = 4 p1/(E + m)`, `J_r = -4 p1 |B|^2/(E + m)`,
/// `J_t = 4 p2 |C|^2/(E - V0 + m)`, zero transmitted current below the step.
pub fn printed_currents(p: &StepProblem, amps: &AmplitudeSet) -> CurrentDensities {
    let (e, m) = (p.energy(), p.mass());
    let inc = 4.0 * p.incident_momentum() / (e + m);
    let trans = match p.transmitted_momentum() {
        Some(p2) => 4.0 * p2 / (p.kinetic_beyond_step() + m),
        None => 0.0,
    };
    CurrentDensities {
        j_inc: inc,
        j_refl_up: -inc * amps.reflected_up.norm_sqr(),
        j_refl_down: -inc * amps.reflected_down.norm_sqr(),
        j_trans_up: trans * amps.transmitted_up.norm_sqr(),
        j_trans_down: trans * amps.transmitted_down.norm_sqr(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::Spin;
    use crate::scattering::{solve_amplitudes_linear, solve_linear_detailed};

    #[test]
    fn bilinear_matches_printed_forms() {
        for (e, v) in [(200.0, 100.0), (5e5, 1e5), (2.5e6, 1e6), (50.0, 100.0)] {
            let p = StepProblem::electron(e, v).unwrap();
            let a = solve_amplitudes_linear(&p).unwrap();
            let bil = currents(&p, &a).unwrap();
            let pr = printed_currents(&p, &a);
            assert!(bil.max_relative_difference(&pr) <= 1e-12, "{bil:?} {pr:?}");
            assert!((bil.conservation_ratio() - 1.0).abs() <= 1e-12);
            assert!(bil.j_inc > 0.0 && bil.j_refl_up <= 0.0 && bil.j_refl_down <= 0.0);
        }
    }

    #[test]
    fn decaying_wave_has_zero_current() {
        let p = StepProblem::electron(50.0, 100.0).unwrap();
        let sol = solve_linear_detailed(&p).unwrap();
        let j = current_bilinear(&sol.right, EtaRepresentation::Rep1);
        assert!(j.abs() <= 1e-12 * current_bilinear(&sol.left, EtaRepresentation::Rep1).abs().max(1.0));
        let c = currents(&p, &sol.amplitudes).unwrap();
        assert_eq!((c.j_trans_up, c.j_trans_down), (0.0, 0.0));
    }

    #[test]
    fn spin_down_incident_conserves_current() {
        let p = StepProblem::electron(300.0, 100.0)
            .unwrap()
            .with_incident_spin(Spin::Down);
        let a = solve_amplitudes_linear(&p).unwrap();
        let c = currents(&p, &a).unwrap();
        assert!((c.conservation_ratio() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn serialized_field_names() {
        let c = CurrentDensities {
            j_inc: 1.0,
            j_refl_up: -0.5,
            j_refl_down: 0.0,
            j_trans_up: 0.5,
            j_trans_down: 0.0,
        };
        let v = serde_json::to_value(c).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in ["j_inc", "j_refl_up", "j_refl_down", "j_trans_up", "j_trans_down"] {
            assert!(keys.iter().any(|x| x == k));
        }
    }
}
