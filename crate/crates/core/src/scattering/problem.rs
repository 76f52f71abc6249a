use std::fmt;

use serde::Serialize;

use crate::algebra::{Complex, Spinor4};
use crate::eigensystem::{
    plane_wave_spinor, positive, Direction, PlaneWaveState, Spin, ELECTRON_MASS_EV,
};

use super::{ScatteringError, MASS_POLE_EPS, THRESHOLD_EPS};

/// Which side of the step the incident energy lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `E > V0`: oscillating transmitted wave.
    Propagating,
    /// `E < V0`: decaying wave under the step, zero transmitted current.
    Evanescent,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Propagating => "propagating",
            Branch::Evanescent => "evanescent",
        })
    }
}

/// An electron of energy `E` hitting a step of height `V0` at `z = 0`.
/// All quantities in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepProblem {
    energy: f64,
    v0: f64,
    mass: f64,
    incident_spin: Spin,
    branch: Branch,
}

impl StepProblem {
    pub fn new(energy: f64, v0: f64, mass: f64, incident_spin: Spin) -> Result<Self, ScatteringError> {
        positive("energy", energy)?;
        positive("v0", v0)?;
        positive("mass", mass)?;
        if (energy - v0).abs() <= THRESHOLD_EPS * v0 {
            return Err(ScatteringError::ThresholdDegeneracy { energy, v0 });
        }
        let branch = if energy > v0 {
            Branch::Propagating
        } else {
            Branch::Evanescent
        };
        Ok(Self {
            energy,
            v0,
            mass,
            incident_spin,
            branch,
        })
    }

    /// Spin-up electron (`m = m_e`).
    pub fn electron(energy: f64, v0: f64) -> Result<Self, ScatteringError> {
        Self::new(energy, v0, ELECTRON_MASS_EV, Spin::Up)
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn incident_spin(&self) -> Spin {
        self.incident_spin
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn with_incident_spin(mut self, spin: Spin) -> Self {
        self.incident_spin = spin;
        self
    }

    /// `p1 = sqrt(2 E m)`
    pub fn incident_momentum(&self) -> f64 {
        (2.0 * self.energy * self.mass).sqrt()
    }

    /// `E - V0`
    pub fn kinetic_beyond_step(&self) -> f64 {
        self.energy - self.v0
    }

    /// `p2 = sqrt(2 (E - V0) m)` on the propagating branch.
    pub fn transmitted_momentum(&self) -> Option<f64> {
        (self.branch == Branch::Propagating)
            .then(|| (2.0 * (self.energy - self.v0) * self.mass).sqrt())
    }

    /// `kappa = sqrt(2 m (V0 - E))` on the evanescent branch.
    pub fn decay_constant(&self) -> Option<f64> {
        (self.branch == Branch::Evanescent)
            .then(|| (2.0 * self.mass * (self.v0 - self.energy)).sqrt())
    }

    /// Eigenvalue of `(E - V0) eta + m eta^dag` selected beyond the step:
    /// `p2`, or `i kappa` for the decaying solution.
    pub fn transmitted_eigenvalue(&self) -> Complex {
        match self.branch {
            Branch::Propagating => Complex::new(self.transmitted_momentum().unwrap_or(0.0), 0.0),
            Branch::Evanescent => Complex::new(0.0, self.decay_constant().unwrap_or(0.0)),
        }
    }

    /// `(E + m) sqrt(E - V0) / ((E - V0 + m) sqrt(E))`, the ratio of
    /// transmitted to incident current per unit amplitude squared.
    pub fn flux_factor(&self) -> Option<f64> {
        let (e, v, m) = (self.energy, self.v0, self.mass);
        (self.branch == Branch::Propagating)
            .then(|| (e + m) * (e - v).sqrt() / ((e - v + m) * e.sqrt()))
    }

    /// `V0 - E = m`, where `rho = 1/(V0 - E - m)` in the decaying spinors
    /// diverges.
    pub fn near_mass_pole(&self) -> bool {
        self.branch == Branch::Evanescent
            && (self.v0 - self.energy - self.mass).abs() <= MASS_POLE_EPS * self.mass
    }
}

/// Decaying spinor `psi ~ e^{-kappa z}` under a high step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvanescentState {
    #[serde(rename = "components")]
    pub spinor: Spinor4,
    pub decay_constant: f64,
    pub spin: Spin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransmittedBasis {
    Propagating([PlaneWaveState; 2]),
    Evanescent([EvanescentState; 2]),
}

impl TransmittedBasis {
    /// `[spin up, spin down]`
    pub fn spinors(&self) -> [Spinor4; 2] {
        match self {
            TransmittedBasis::Propagating(s) => [s[0].spinor, s[1].spinor],
            TransmittedBasis::Evanescent(s) => [s[0].spinor, s[1].spinor],
        }
    }
}

/// Spinors of the three waves at `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionStates {
    pub incident: PlaneWaveState,
    /// `[spin up, spin down]`, momentum `-p1`.
    pub reflected: [PlaneWaveState; 2],
    /// `[spin up, spin down]`.
    pub transmitted: TransmittedBasis,
}

fn plane_wave(spin: Spin, kinetic: f64, mass: f64, momentum: f64) -> PlaneWaveState {
    PlaneWaveState {
        spinor: plane_wave_spinor(spin, kinetic, mass, Complex::new(momentum, 0.0)),
        momentum,
        energy: kinetic,
        spin,
        direction: if momentum >= 0.0 {
            Direction::PositiveZ
        } else {
            Direction::NegativeZ
        },
    }
}

/// Incident, reflected and transmitted spinors for the step.
///
/// Below the step the transmitted spinors are
/// `(1, 0, i rho (V0 - E + m), sqrt2 i rho kappa)` and
/// `(0, 1, -sqrt2 i rho kappa, -i rho (V0 - E + m))` with
/// `rho = 1/(V0 - E - m)`, so [`ScatteringError::MassPole`] is returned
/// when `|V0 - E - m| <= 1e-12 m`.
pub fn region_wavefunctions(p: &StepProblem) -> Result<RegionStates, ScatteringError> {
    let (e, m) = (p.energy, p.mass);
    let p1 = p.incident_momentum();
    let incident = plane_wave(p.incident_spin, e, m, p1);
    let reflected = [plane_wave(Spin::Up, e, m, -p1), plane_wave(Spin::Down, e, m, -p1)];
    let kinetic = p.kinetic_beyond_step();
    let transmitted = match p.branch {
        Branch::Propagating => {
            let p2 = p.transmitted_momentum().unwrap_or(0.0);
            TransmittedBasis::Propagating([
                plane_wave(Spin::Up, kinetic, m, p2),
                plane_wave(Spin::Down, kinetic, m, p2),
            ])
        }
        Branch::Evanescent => {
            if p.near_mass_pole() {
                return Err(ScatteringError::MassPole {
                    energy: e,
                    v0: p.v0,
                    mass: m,
                });
            }
            let kappa = p.decay_constant().unwrap_or(0.0);
            let k = Complex::new(0.0, kappa);
            TransmittedBasis::Evanescent([Spin::Up, Spin::Down].map(|spin| EvanescentState {
                spinor: plane_wave_spinor(spin, kinetic, m, k),
                decay_constant: kappa,
                spin,
            }))
        }
    };
    Ok(RegionStates {
        incident,
        reflected,
        transmitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    const ME: f64 = ELECTRON_MASS_EV;

    #[test]
    fn threshold_is_rejected() {
        let err = StepProblem::electron(100.0, 100.0).unwrap_err();
        assert!(matches!(err, ScatteringError::ThresholdDegeneracy { .. }));
        let err = StepProblem::electron(100.0 * (1.0 + 5e-10), 100.0).unwrap_err();
        assert!(matches!(err, ScatteringError::ThresholdDegeneracy { .. }));
        assert!(StepProblem::electron(100.0 * (1.0 + 2e-9), 100.0).is_ok());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(StepProblem::electron(-1.0, 100.0).is_err());
        assert!(StepProblem::electron(1.0, 0.0).is_err());
        assert!(StepProblem::new(1.0, 2.0, f64::INFINITY, Spin::Up).is_err());
    }

    #[test]
    fn transmitted_momentum_above_step() {
        let p = StepProblem::electron(200.0, 100.0).unwrap();
        assert_eq!(p.branch(), Branch::Propagating);
        // sqrt(2 * 100 * 510998.95), evaluated at 30 digits
        let want = 10_109.391_178_503_283;
        assert!((p.transmitted_momentum().unwrap() - want).abs() < 1e-9);
        assert!(p.decay_constant().is_none());
    }

    #[test]
    fn decay_constant_below_step() {
        let p = StepProblem::electron(50.0, 100.0).unwrap();
        assert_eq!(p.branch(), Branch::Evanescent);
        // sqrt(2 * 510998.95 * 50)
        let want = 7_148.419_055_987_135;
        assert!((p.decay_constant().unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn evanescent_spinors_match_printed_form() {
        let p = StepProblem::electron(50.0, 100.0).unwrap();
        let states = region_wavefunctions(&p).unwrap();
        let TransmittedBasis::Evanescent([up, down]) = states.transmitted else {
            panic!("expected decaying basis");
        };
        let (e, v, m) = (50.0, 100.0, ME);
        let rho = 1.0 / (v - e - m);
        let kappa = p.decay_constant().unwrap();
        let i = Complex::new(0.0, 1.0);
        let printed_up = Spinor4::new([
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
            i * rho * (v - e + m),
            i * (SQRT_2 * rho * kappa),
        ]);
        let printed_down = Spinor4::new([
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            -i * (SQRT_2 * rho * kappa),
            -i * rho * (v - e + m),
        ]);
        assert!((up.spinor - printed_up).max_abs() < 1e-15);
        assert!((down.spinor - printed_down).max_abs() < 1e-15);
        assert_eq!(up.spinor[0], Complex::new(1.0, 0.0));
        assert_eq!(up.spinor[1], Complex::new(0.0, 0.0));
    }

    #[test]
    fn mass_pole_is_rejected_by_wavefunctions() {
        let v0 = 1.0e6;
        let p = StepProblem::electron(v0 - ME, v0).unwrap();
        assert!(p.near_mass_pole());
        assert!(matches!(
            region_wavefunctions(&p),
            Err(ScatteringError::MassPole { .. })
        ));
    }

    #[test]
    fn reflected_basis_has_negative_momentum() {
        let p = StepProblem::electron(300.0, 100.0).unwrap();
        let s = region_wavefunctions(&p).unwrap();
        assert!(s.reflected.iter().all(|r| r.direction == Direction::NegativeZ));
        assert_eq!(s.incident.spin, Spin::Up);
        let down = p.with_incident_spin(Spin::Down);
        assert_eq!(region_wavefunctions(&down).unwrap().incident.spin, Spin::Down);
    }
}
