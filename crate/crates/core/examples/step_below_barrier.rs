//! Total reflection below the step. R1' and R2' depend only on E and m,
//! not on V0, and the linear path stays finite where the printed decaying
//! spinors blow up (V0 - E = m).

use spinstep::eigensystem::ELECTRON_MASS_EV as ME;
use spinstep::scattering::{
    coefficients, region_wavefunctions, solve_amplitudes_linear, ScatteringError, StepProblem,
};

fn reflect(e: f64, v0: f64) -> Result<(f64, f64), ScatteringError> {
    let p = StepProblem::electron(e, v0)?;
    let c = coefficients(&p, &solve_amplitudes_linear(&p)?)?;
    Ok((c.reflected_up(), c.reflected_down()))
}

fn main() -> Result<(), ScatteringError> {
    println!("{:>12} {:>20} {:>20} {:>20}", "E (eV)", "R1'", "R2'", "(E-m)^2/(E+m)^2");
    for e in [1.0, 50.0, 1.0e4, 2.0e5, ME, 2.0e6] {
        let (r1, r2) = reflect(e, 5.0e6)?;
        println!("{e:>12.1} {r1:>20.15} {r2:>20.15} {:>20.15}", (e - ME).powi(2) / (e + ME).powi(2));
    }

    let e = 50.0;
    let (a, _) = reflect(e, 100.0)?;
    let (b, _) = reflect(e, 1000.0)?;
    println!("\nE = {e} eV: R1' at V0 = 100 eV {a:.15}, at 1 keV {b:.15}");

    let v0 = 1.0e6;
    let at_pole = StepProblem::electron(v0 - ME, v0)?;
    match region_wavefunctions(&at_pole) {
        Err(err) => println!("\n{err}"),
        Ok(_) => println!("\nunexpected: printed spinors finite at the pole"),
    }
    let (r1, r2) = reflect(v0 - ME, v0)?;
    println!("linear solve there: R1' = {r1:.15}, R2' = {r2:.15}");
    Ok(())
}
