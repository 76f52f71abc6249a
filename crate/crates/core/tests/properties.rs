use proptest::prelude::*;

use spinstep::algebra::EtaRepresentation;
use spinstep::eigensystem::{Spin, ELECTRON_MASS_EV as ME};
use spinstep::scattering::{
    coefficients, currents, qm_reference, solve_amplitudes_linear, solve_linear_detailed,
    ScatteringCoefficients, StepProblem,
};
use spinstep::scattering::representation::flux_coefficients;

/// Step heights from 1 eV to 10 MeV, log-uniform.
fn step() -> impl Strategy<Value = f64> {
    (0.0f64..7.0).prop_map(|x| 10f64.powf(x))
}

fn above() -> impl Strategy<Value = (f64, f64)> {
    (step(), 1.0e-3f64..2.0).prop_map(|(v0, x)| (v0 * x.exp(), v0))
}

fn below() -> impl Strategy<Value = (f64, f64)> {
    (step(), 1.0e-3f64..0.999).prop_map(|(v0, r)| (r * v0, v0))
}

fn any_point() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![above(), below()]
}

fn spin() -> impl Strategy<Value = Spin> {
    prop_oneof![Just(Spin::Up), Just(Spin::Down)]
}

fn solve(e: f64, v0: f64, spin: Spin) -> (StepProblem, ScatteringCoefficients) {
    let p = StepProblem::new(e, v0, ME, spin).unwrap();
    let c = coefficients(&p, &solve_amplitudes_linear(&p).unwrap()).unwrap();
    (p, c)
}

proptest! {
    #[test]
    fn coefficients_sum_to_one((e, v0) in any_point(), s in spin()) {
        let (_, c) = solve(e, v0, s);
        prop_assert!((c.sum() - 1.0).abs() <= 1e-12);
        for (_, x) in c.values() {
            prop_assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn total_transmission_is_spinless((e, v0) in above(), s in spin()) {
        let (_, c) = solve(e, v0, s);
        let qm = qm_reference(e, v0).unwrap();
        prop_assert!((c.transmission() - qm.t_qm).abs() <= 1e-10);
        prop_assert!((c.reflection() - qm.r_qm).abs() <= 1e-10);
    }

    #[test]
    fn spin_down_mirrors_spin_up((e, v0) in any_point()) {
        let (_, up) = solve(e, v0, Spin::Up);
        let (_, down) = solve(e, v0, Spin::Down);
        prop_assert!((up.reflected_up() - down.reflected_down()).abs() <= 1e-12);
        prop_assert!((up.reflected_down() - down.reflected_up()).abs() <= 1e-12);
    }

    #[test]
    fn wavefunction_is_continuous((e, v0) in any_point(), s in spin()) {
        let p = StepProblem::new(e, v0, ME, s).unwrap();
        prop_assert!(solve_linear_detailed(&p).unwrap().continuity_residual() <= 1e-11);
    }

    #[test]
    fn flipped_amplitudes_match((e, v0) in above()) {
        let p = StepProblem::electron(e, v0).unwrap();
        let a = solve_amplitudes_linear(&p).unwrap();
        let scale = a.transmitted_up.norm().max(1.0);
        prop_assert!((a.reflected_down - a.transmitted_down).norm() <= 1e-12 * scale);
        prop_assert!((a.transmitted_up - 1.0 - a.reflected_up).norm() <= 1e-12 * scale);
    }

    #[test]
    fn current_is_conserved((e, v0) in any_point(), s in spin()) {
        let p = StepProblem::new(e, v0, ME, s).unwrap();
        let j = currents(&p, &solve_amplitudes_linear(&p).unwrap()).unwrap();
        prop_assert!((j.conservation_ratio() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn evanescent_ignores_step_height((e, v0) in below(), k in 1.5f64..100.0) {
        let (_, a) = solve(e, v0, Spin::Up);
        let (_, b) = solve(e, k * v0, Spin::Up);
        prop_assert!((a.reflected_up() - b.reflected_up()).abs() <= 1e-12);
    }

    #[test]
    fn total_flux_is_representation_independent((e, v0) in any_point()) {
        let p = StepProblem::electron(e, v0).unwrap();
        let a = flux_coefficients(&p, EtaRepresentation::Rep1).unwrap();
        let b = flux_coefficients(&p, EtaRepresentation::Rep2).unwrap();
        prop_assert!((a.reflected_total - b.reflected_total).abs() <= 1e-10);
        prop_assert!((b.sum() - 1.0).abs() <= 1e-10);
    }
}
