use crate::algebra::{solve_linear_4x4, Complex, ComplexMatrix4, EtaRepresentation, Spinor4};
use crate::eigensystem::{eigenspace_projector, momentum_operator, plane_wave_spinor, Spin};

use super::problem::{region_wavefunctions, Branch, StepProblem};
use super::{ScatteringError, SMALL_V0_FLOOR};

/// Amplitude ratios relative to the incident amplitude `A = 1`.
///
/// `transmitted_*` hold `C, C'` above the step and `D, D'` below it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet {
    pub branch: Branch,
    /// `B`
    pub reflected_up: Complex,
    /// `B'`
    pub reflected_down: Complex,
    /// `C` or `D`
    pub transmitted_up: Complex,
    /// `C'` or `D'`
    pub transmitted_down: Complex,
}

impl AmplitudeSet {
    /// Largest relative difference between corresponding amplitudes.
    pub fn max_relative_difference(&self, other: &Self) -> f64 {
        let pairs = [
            (self.reflected_up, other.reflected_up),
            (self.reflected_down, other.reflected_down),
            (self.transmitted_up, other.transmitted_up),
            (self.transmitted_down, other.transmitted_down),
        ];
        pairs
            .iter()
            .map(|(a, b)| {
                let d = (a - b).norm();
                if d == 0.0 {
                    0.0
                } else {
                    d / a.norm().max(b.norm())
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Output of the boundary-matching solve, keeping the two sides of the
/// matching condition at `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSolution {
    pub amplitudes: AmplitudeSet,
    /// `psi_I(0) + psi_I^r(0)`
    pub left: Spinor4,
    /// `psi_II(0)` in the basis the solve used.
    pub right: Spinor4,
}

impl LinearSolution {
    pub fn continuity_residual(&self) -> f64 {
        continuity_residual_1d(&self.left, &self.right)
    }
}

/// Largest component modulus of `psi_left - psi_right`.
pub fn continuity_residual_1d(left: &Spinor4, right: &Spinor4) -> f64 {
    (*left - *right).max_abs()
}

/// Solves the matching condition at `z = 0` as a 4x4 linear system with
/// unknowns `(B, B', C, C')` or `(B, B', D, D')`.
pub fn solve_amplitudes_linear(p: &StepProblem) -> Result<AmplitudeSet, ScatteringError> {
    Ok(solve_linear_detailed(p)?.amplitudes)
}

/// As [`solve_amplitudes_linear`], also returning both sides of the
/// matching condition.
///
/// Above the step the transmitted basis is the printed spin-up/spin-down
/// pair. Below the step it is two columns of the spectral projector onto
/// the `+i kappa` eigenspace, which stays well defined where the printed
/// decaying spinors have the `1/(V0 - E - m)` pole; `D` and `D'` are then
/// read off as the upper two components of `psi_II(0)`, which is exactly
/// their meaning in the printed basis.
pub fn solve_linear_detailed(p: &StepProblem) -> Result<LinearSolution, ScatteringError> {
    let (e, m) = (p.energy(), p.mass());
    let p1 = Complex::new(p.incident_momentum(), 0.0);
    let incident = plane_wave_spinor(p.incident_spin(), e, m, p1);
    let refl_up = plane_wave_spinor(Spin::Up, e, m, -p1);
    let refl_down = plane_wave_spinor(Spin::Down, e, m, -p1);

    let [t_a, t_b] = match p.branch() {
        Branch::Propagating => {
            let k = p.transmitted_eigenvalue();
            let kinetic = p.kinetic_beyond_step();
            [
                plane_wave_spinor(Spin::Up, kinetic, m, k),
                plane_wave_spinor(Spin::Down, kinetic, m, k),
            ]
        }
        Branch::Evanescent => decaying_span(p, EtaRepresentation::Rep1)?,
    };

    let system = ComplexMatrix4::from_columns([refl_up, refl_down, -t_a, -t_b]);
    let x = solve_linear_4x4(&system, &-incident)?;
    let left = incident + refl_up * x[0] + refl_down * x[1];
    let right = t_a * x[2] + t_b * x[3];
    let (transmitted_up, transmitted_down) = match p.branch() {
        Branch::Propagating => (x[2], x[3]),
        Branch::Evanescent => (right[0], right[1]),
    };
    Ok(LinearSolution {
        amplitudes: AmplitudeSet {
            branch: p.branch(),
            reflected_up: x[0],
            reflected_down: x[1],
            transmitted_up,
            transmitted_down,
        },
        left,
        right,
    })
}

/// Two well-separated columns of the projector onto the decaying
/// eigenspace of `(E - V0) eta + m eta^dag`.
pub(crate) fn decaying_span(
    p: &StepProblem,
    rep: EtaRepresentation,
) -> Result<[Spinor4; 2], ScatteringError> {
    let op = momentum_operator(p.kinetic_beyond_step(), p.mass(), rep);
    let proj = eigenspace_projector(&op, p.transmitted_eigenvalue())?;
    let cols: [Spinor4; 4] = std::array::from_fn(|c| proj.column(c));
    let first = cols
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("four columns");
    let unit = first * (1.0 / first.norm());
    let second = cols
        .iter()
        .map(|c| *c - unit * unit.inner(c))
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("four columns");
    Ok([first, second])
}

/// Both sides of the matching condition rebuilt from an amplitude set in
/// the printed spinor basis. Used to check closed-form amplitudes.
pub fn boundary_spinors(
    p: &StepProblem,
    amps: &AmplitudeSet,
) -> Result<(Spinor4, Spinor4), ScatteringError> {
    let states = region_wavefunctions(p)?;
    let left = states.incident.spinor
        + states.reflected[0].spinor * amps.reflected_up
        + states.reflected[1].spinor * amps.reflected_down;
    let [t_up, t_down] = states.transmitted.spinors();
    let right = t_up * amps.transmitted_up + t_down * amps.transmitted_down;
    Ok((left, right))
}

/// The printed amplitude ratios for a spin-up incident electron.
///
/// Above the step:
/// `B/A = (m - E) V0 / ((E + m)(2E + 2q - V0))`, `B' = C'`,
/// `C/A = (-2E^2 - 2mq + 2E(m + q + V0)) / ((E + m) V0)`,
/// `C'/A = 2i sqrt(Em) V0 / ((E + m)(2E + 2q - V0))` with `q = sqrt(E(E - V0))`.
///
/// Below the step, with `s = sqrt(E(V0 - E))`:
/// `B/A = (m - E) V0 / ((E + m)(2E - V0 + 2is))`,
/// `B'/A = D'/A = 2 sqrt(Em) V0 / ((E + m)(-2iE + iV0 + 2s))`,
/// `D/A = 2(E^2 + E(m - V0) + i(ms + sqrt(E^3 (V0 - E)))) / ((E + m)(2E - V0 + 2is))`.
pub fn closed_form_amplitudes(p: &StepProblem) -> Result<AmplitudeSet, ScatteringError> {
    if p.incident_spin() != Spin::Up {
        return Err(ScatteringError::ClosedFormUnavailable(
            "closed forms exist only for a spin-up incident electron",
        ));
    }
    let (e, v, m) = (p.energy(), p.v0(), p.mass());
    let i = Complex::new(0.0, 1.0);
    let em = e + m;
    match p.branch() {
        Branch::Propagating => {
            if v < SMALL_V0_FLOOR * e {
                return Err(ScatteringError::CancellationRisk { v0_over_e: v / e });
            }
            let q = (e * (e - v)).sqrt();
            let den = em * (2.0 * e + 2.0 * q - v);
            let b = (m - e) * v / den;
            let c = (-2.0 * e * e - 2.0 * m * q + 2.0 * e * (m + q + v)) / (em * v);
            let c_prime = i * (2.0 * (e * m).sqrt() * v / den);
            Ok(AmplitudeSet {
                branch: Branch::Propagating,
                reflected_up: Complex::new(b, 0.0),
                reflected_down: c_prime,
                transmitted_up: Complex::new(c, 0.0),
                transmitted_down: c_prime,
            })
        }
        Branch::Evanescent => {
            let s = (e * (v - e)).sqrt();
            let den = (Complex::new(2.0 * e - v, 2.0 * s)) * em;
            let b = Complex::new((m - e) * v, 0.0) / den;
            let b_prime = Complex::new(2.0 * (e * m).sqrt() * v, 0.0)
                / ((i * (v - 2.0 * e) + 2.0 * s) * em);
            let d = (Complex::new(e * e + e * (m - v), 0.0)
                + i * (m * s + (e * e * e * (v - e)).sqrt()))
                * 2.0
                / den;
            Ok(AmplitudeSet {
                branch: Branch::Evanescent,
                reflected_up: b,
                reflected_down: b_prime,
                transmitted_up: d,
                transmitted_down: b_prime,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::ELECTRON_MASS_EV as ME;

    #[test]
    fn linear_solve_satisfies_matching_condition() {
        for (e, v) in [(200.0, 100.0), (50.0, 100.0), (2.0e6, 1.0e6), (3.0e5, 1.0e6)] {
            let p = StepProblem::electron(e, v).unwrap();
            let sol = solve_linear_detailed(&p).unwrap();
            assert!(sol.continuity_residual() <= 1e-12, "{e} {v}: {}", sol.continuity_residual());
        }
    }

    #[test]
    fn b_prime_equals_c_prime_above_step() {
        let p = StepProblem::electron(200.0, 100.0).unwrap();
        let a = solve_amplitudes_linear(&p).unwrap();
        assert!((a.reflected_down - a.transmitted_down).norm() <= 1e-12);
        // C = 1 + B from the first spinor component
        assert!((a.transmitted_up - (a.reflected_up + 1.0)).norm() <= 1e-12);
    }

    #[test]
    fn closed_form_matches_linear_at_twice_the_step() {
        let p = StepProblem::electron(200.0, 100.0).unwrap();
        let lin = solve_amplitudes_linear(&p).unwrap();
        let cf = closed_form_amplitudes(&p).unwrap();
        assert!(lin.max_relative_difference(&cf) <= 1e-10, "{lin:?} {cf:?}");
    }

    #[test]
    fn closed_form_matches_linear_below_step() {
        for (e, v) in [(50.0, 100.0), (3.0e5, 1.0e6), (1.0e5, 1.0e6)] {
            let p = StepProblem::electron(e, v).unwrap();
            let lin = solve_amplitudes_linear(&p).unwrap();
            let cf = closed_form_amplitudes(&p).unwrap();
            assert!(lin.max_relative_difference(&cf) <= 1e-10, "{e}: {lin:?} {cf:?}");
        }
    }

    #[test]
    fn closed_form_amplitudes_satisfy_matching() {
        let p = StepProblem::electron(250.0, 100.0).unwrap();
        let (l, r) = boundary_spinors(&p, &closed_form_amplitudes(&p).unwrap()).unwrap();
        assert!(continuity_residual_1d(&l, &r) <= 1e-10);
    }

    #[test]
    fn reflection_vanishes_at_e_equal_m() {
        let p = StepProblem::new(1.0, 0.5, 1.0, Spin::Up).unwrap();
        assert_eq!(closed_form_amplitudes(&p).unwrap().reflected_up, Complex::new(0.0, 0.0));
    }

    #[test]
    fn decaying_denominator_has_modulus_v0() {
        // (2E - V0)^2 + 4E(V0 - E) = V0^2
        for (e, v) in [(50.0, 100.0), (1.0, 1.0e6), (999.0, 1000.0)] {
            let d = Complex::new(2.0 * e - v, 2.0 * (e * (v - e)).sqrt());
            assert!((d.norm_sqr() - v * v).abs() <= 1e-12 * v * v);
        }
    }

    #[test]
    fn small_step_limit() {
        let e = 1000.0;
        let p = StepProblem::electron(e, 1e-6 * e).unwrap();
        let a = solve_amplitudes_linear(&p).unwrap();
        assert!(a.reflected_up.norm() < 1e-5);
        assert!(a.reflected_down.norm() < 1e-5);
        assert!(a.transmitted_down.norm() < 1e-5);
        assert!((a.transmitted_up - 1.0).norm() < 1e-5);
        let tiny = StepProblem::electron(e, 1e-7 * e).unwrap();
        assert!(matches!(
            closed_form_amplitudes(&tiny),
            Err(ScatteringError::CancellationRisk { .. })
        ));
    }

    #[test]
    fn linear_solve_is_regular_at_mass_pole() {
        let v = 1.0e6;
        let p = StepProblem::electron(v - ME, v).unwrap();
        let sol = solve_linear_detailed(&p).unwrap();
        assert!(sol.continuity_residual() <= 1e-12);
        let r1 = sol.amplitudes.reflected_up.norm_sqr();
        let r2 = sol.amplitudes.reflected_down.norm_sqr();
        let e = v - ME;
        assert!((r1 - (e - ME).powi(2) / (e + ME).powi(2)).abs() <= 1e-12);
        assert!((r2 - 4.0 * e * ME / (e + ME).powi(2)).abs() <= 1e-12);
    }

    #[test]
    fn spin_down_closed_form_unavailable() {
        let p = StepProblem::electron(200.0, 100.0)
            .unwrap()
            .with_incident_spin(Spin::Down);
        assert!(matches!(
            closed_form_amplitudes(&p),
            Err(ScatteringError::ClosedFormUnavailable(_))
        ));
    }
}
