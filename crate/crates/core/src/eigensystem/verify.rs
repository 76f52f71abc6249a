use crate::algebra::{AlgebraReport, Complex, EtaRepresentation};

use super::{
    analytic_eigenstate, momentum_operator, numeric_eigensystem, spin_labelled_basis,
    EigenstateKind, PlaneWaveState,
};

/// Eigenvalue and eigenvector checks for `E eta + m eta^dag` at one point.
///
/// Eigenvalue deviations are relative to `p = sqrt(2 E m)`. Under `rep1`
/// the printed states are checked for `u^dag u = 2` and mutual
/// orthogonality of the two spins; under any representation the
/// spin-labelled projector bases are checked as eigenvectors.
pub fn verify_eigensystem(
    energy: f64,
    mass: f64,
    rep: EtaRepresentation,
    tol: f64,
) -> AlgebraReport {
    let op = momentum_operator(energy, mass, rep);
    let p = (2.0 * energy * mass).sqrt();
    let dec = numeric_eigensystem(&op);

    let mut re: Vec<f64> = dec.eigenvalues.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    let expected = [-p, -p, p, p];
    let value_dev = re
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs() / p)
        .fold(0.0, f64::max);
    let imag_dev = dec.eigenvalues.iter().map(|z| z.im.abs() / p).fold(0.0, f64::max);

    let mut basis_dev: f64 = 0.0;
    for k in [p, -p] {
        let k = Complex::new(k, 0.0);
        match spin_labelled_basis(&op, k) {
            Ok(vs) => {
                for v in vs {
                    basis_dev = basis_dev.max((op * v - v * k).max_abs() / (p * v.max_abs()));
                }
            }
            Err(_) => basis_dev = f64::INFINITY,
        }
    }

    let mut report = AlgebraReport::new();
    report
        .record("eigenvalues = +-sqrt(2Em)", value_dev, tol)
        .record("eigenvalue imaginary parts", imag_dev, tol)
        .record("numeric eigenvector residual", dec.max_residual(&op), tol)
        .record("spin-labelled basis residual", basis_dev, tol);

    if rep == EtaRepresentation::Rep1 {
        let u: Vec<PlaneWaveState> = EigenstateKind::ALL
            .iter()
            .map(|&k| analytic_eigenstate(k, energy, mass))
            .collect();
        let norm_dev = u
            .iter()
            .map(|s| (s.normalization() - 2.0).abs())
            .fold(0.0, f64::max);
        let cross = u[0]
            .spinor
            .inner(&u[1].spinor)
            .norm()
            .max(u[2].spinor.inner(&u[3].spinor).norm());
        let eigen_dev = u
            .iter()
            .map(|s| (op * s.spinor - s.spinor * s.momentum).max_abs() / p)
            .fold(0.0, f64::max);
        report
            .record("u^dag u = 2", norm_dev, tol)
            .record("u1^dag u2 = u3^dag u4 = 0", cross, tol)
            .record("printed states are eigenvectors", eigen_dev, tol);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::ELECTRON_MASS_EV;

    #[test]
    fn passes_for_both_representations() {
        for rep in EtaRepresentation::ALL {
            for e in [1.0, 1e3, 1e7] {
                let r = verify_eigensystem(e, ELECTRON_MASS_EV, rep, 1e-10);
                assert!(r.passed(), "{rep} {e}: {r:?}");
            }
        }
    }
}
