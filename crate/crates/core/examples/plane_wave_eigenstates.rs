//! Eigenvalues of E eta + m eta^dag from the numeric solver, compared with
//! +-sqrt(2Em), and the four printed plane-wave spinors.

use spinstep::algebra::EtaRepresentation;
use spinstep::eigensystem::{
    analytic_eigenstate, momentum_operator, numeric_eigensystem, EigenstateKind, ELECTRON_MASS_EV,
};

fn main() {
    let m = ELECTRON_MASS_EV;
    println!("{:>10} {:>16} {:>24} {:>10}", "E (eV)", "sqrt(2Em)", "numeric eigenvalues", "residual");
    for e in [1.0, 100.0, 1.0e4, 1.0e6, 1.0e7] {
        let op = momentum_operator(e, m, EtaRepresentation::Rep1);
        let dec = numeric_eigensystem(&op);
        let vals: Vec<String> = dec.eigenspaces.iter()
            .map(|s| format!("{:.6} (x{})", s.eigenvalue.re, s.algebraic_multiplicity))
            .collect();
        println!("{e:>10.0e} {:>16.6} {:>24} {:>10.1e}", (2.0 * e * m).sqrt(), vals.join(", "), dec.max_residual(&op));
    }

    let e = 100.0;
    println!("\nprinted states at E = {e} eV:");
    for k in EigenstateKind::ALL {
        let s = analytic_eigenstate(k, e, m);
        println!("  {k:?} p = {:+.4}  u^dag u = {:.15}  {:?}", s.momentum, s.normalization(), s.spinor);
    }
}
