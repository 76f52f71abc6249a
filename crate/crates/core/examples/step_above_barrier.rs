//! An electron at twice the height of a 100 eV step: amplitudes from the
//! linear solve and from the closed forms, then the coefficients and the
//! spinless reference.

use spinstep::scattering::{
    analyze, closed_form_amplitudes, solve_linear_detailed, StepProblem,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = StepProblem::electron(200.0, 100.0)?;
    let sol = solve_linear_detailed(&p)?;
    let cf = closed_form_amplitudes(&p)?;
    let lin = sol.amplitudes;

    println!("          linear solve                    closed form");
    for (name, a, b) in [
        ("B ", lin.reflected_up, cf.reflected_up),
        ("B'", lin.reflected_down, cf.reflected_down),
        ("C ", lin.transmitted_up, cf.transmitted_up),
        ("C'", lin.transmitted_down, cf.transmitted_down),
    ] {
        println!("{name}  {a:>32.15}  {b:>32.15}");
    }
    println!("max relative difference {:.2e}", lin.max_relative_difference(&cf));
    println!("boundary residual       {:.2e}", sol.continuity_residual());

    let a = analyze(&p)?;
    println!("\n{}", serde_json::to_string_pretty(&a.coefficients)?);
    let qm = a.qm.expect("above the step");
    println!("T1 + T2 = {:.15}   T_QM = {:.15}", a.coefficients.transmission(), qm.t_qm);
    println!("R1 + R2 = {:.15}   R_QM = {:.15}", a.coefficients.reflection(), qm.r_qm);

    // spin-down incidence, no printed forms exist
    let down = analyze(&p.with_incident_spin(spinstep::eigensystem::Spin::Down))?;
    println!("\nspin down incident: {}", serde_json::to_string(&down.coefficients)?);
    Ok(())
}
