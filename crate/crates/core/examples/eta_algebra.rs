//! Checks the nilpotent algebra of both eta representations and the two
//! gamma-matrix identities behind the 1D current and density.
//!
//!     cargo run --example eta_algebra

use spinstep::algebra::{
    eta, gamma_sign_outcome, verify_eta_algebra, verify_gamma_identities, EtaRepresentation,
    IDENTITY_TOL,
};

fn main() {
    for rep in EtaRepresentation::ALL {
        println!("{rep}:");
        println!("{:?}", eta(rep));
        let report = verify_eta_algebra(rep, IDENTITY_TOL);
        for c in report.checks() {
            println!("  {:<24} {:>9.2e}  {}", c.check_name, c.max_deviation, if c.pass { "ok" } else { "FAIL" });
        }
    }

    let sign = gamma_sign_outcome();
    println!("\ngamma_k = {:+} gamma^k in the Dirac basis", sign.sign);
    for c in verify_gamma_identities(IDENTITY_TOL).checks() {
        println!("  {:<64} {:>9.2e}", c.check_name, c.max_deviation);
    }
}
