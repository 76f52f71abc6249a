//! The mu matrices, the relations used in the 3D continuity equation, and
//! the determinant of the momentum-space 3D operator on and off the shell.

use spinstep::algebra::EtaRepresentation;
use spinstep::eigensystem::ELECTRON_MASS_EV as ME;
use spinstep::threed::{
    imaginary_momentum_check, mu_matrices, schrodinger_reduction_check,
    shell_determinant_closed_form, verify_threed, Momentum3,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mu = mu_matrices()?;
    for i in 1..=3 {
        println!("mu_{i} = {:?}", mu.get(i));
    }
    for rep in EtaRepresentation::ALL {
        let r = verify_threed(rep);
        println!("{rep}: {} checks, max deviation {:.1e}, all pass: {}", r.len(), r.max_deviation(), r.passed());
    }

    println!("\n{:>8} {:>6} {:>14} {:>14} {:>14}", "E (eV)", "|p|", "mu.p - M", "(|p|^2+2Em)^2", "i mu.p - M");
    for e in [1.0, 100.0, 1.0e4, 1.0e6] {
        for scale in [1.0, 1.1] {
            let p = Momentum3::along([1.0, 2.0, 2.0], scale * (2.0 * e * ME).sqrt())?;
            let real = schrodinger_reduction_check(e, ME, &p);
            let imag = imaginary_momentum_check(e, ME, &p);
            println!(
                "{e:>8.0e} {:>6} {:>14.3e} {:>14.3e} {:>14.3e}",
                if scale == 1.0 { "shell" } else { "1.1x" },
                real.normalized_det,
                shell_determinant_closed_form(e, ME, &p),
                imag.normalized_det
            );
        }
    }
    Ok(())
}
