//! Probability currents from psi^dag (eta + eta^dag) psi next to the
//! printed closed forms, and the conservation ratio.

use spinstep::scattering::{currents, printed_currents, solve_amplitudes_linear, StepProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (e, v0) in [(200.0, 100.0), (1.5e5, 1.0e5), (2.0e6, 1.0e6), (50.0, 100.0)] {
        let p = StepProblem::electron(e, v0)?;
        let amps = solve_amplitudes_linear(&p)?;
        let j = currents(&p, &amps)?;
        let printed = printed_currents(&p, &amps);
        println!("E = {e:e} eV, V0 = {v0:e} eV ({})", p.branch());
        for ((name, a), b) in ["J_inc", "J_refl_up", "J_refl_down", "J_trans_up", "J_trans_down"]
            .iter()
            .zip(j.fields())
            .zip(printed.fields())
        {
            println!("  {name:<13} {a:>+22.15e} {b:>+22.15e}");
        }
        println!("  ratio {:.16}, max deviation {:.1e}\n", j.conservation_ratio(), j.max_relative_difference(&printed));
    }
    Ok(())
}
