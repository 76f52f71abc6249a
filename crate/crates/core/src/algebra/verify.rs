use std::f64::consts::SQRT_2;

use super::{
    eta, gamma, AlgebraReport, Complex, ComplexMatrix4, EtaRepresentation, GammaIndex,
};

/// Default tolerance for exact-structure identities (entries are 0 or
/// +-1/sqrt2, so every deviation is pure rounding).
pub const IDENTITY_TOL: f64 = 1e-14;

/// Checks the defining algebra of `eta` in the given representation.
pub fn verify_eta_algebra(rep: EtaRepresentation, tol: f64) -> AlgebraReport {
    verify_eta_matrix(&eta(rep), tol)
}

/// Checks an arbitrary candidate matrix against the `eta` requirements:
/// `eta^2 = 0`, `(eta^dag)^2 = 0`, `{eta, eta^dag} = 2I`, symmetry,
/// zero trace and determinant, and a vanishing characteristic polynomial
/// (all eigenvalues zero).
///
/// # Panics
///
/// If `tol` is not strictly positive.
pub fn verify_eta_matrix(candidate: &ComplexMatrix4, tol: f64) -> AlgebraReport {
    assert!(tol > 0.0, "tolerance must be positive, got {tol}");
    let e = *candidate;
    let ed = e.conj_transpose();
    let two_i = ComplexMatrix4::identity() * 2.0;
    let cp = e.characteristic_polynomial();
    let eigen_dev = cp[..4].iter().map(|c| c.norm()).fold(0.0, f64::max);

    let mut report = AlgebraReport::new();
    report
        .record("eta^2 = 0", (e * e).max_abs(), tol)
        .record("(eta^dag)^2 = 0", (ed * ed).max_abs(), tol)
        .record("{eta, eta^dag} = 2I", e.anticommutator(&ed).max_deviation(&two_i), tol)
        .record("eta^T = eta", e.max_deviation(&e.transpose()), tol)
        .record("trace(eta) = 0", e.trace().norm(), tol)
        .record("det(eta) = 0", e.det().norm(), tol)
        .record("eigenvalues(eta) = 0", eigen_dev, tol);
    report
}

/// Sign `s` for which the lower-index `gamma_k` equals `s * gamma^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSignOutcome {
    pub sign: f64,
    pub current_deviation: f64,
    pub density_deviation: f64,
}

/// Evaluates `eta + eta^dag = -i sqrt2 gamma_2` and
/// `eta^dag eta = I + i gamma_3` for both readings `gamma_k = +-gamma^k`
/// and keeps the better one.
pub fn gamma_sign_outcome() -> GammaSignOutcome {
    let e = eta(EtaRepresentation::Rep1);
    let ed = e.conj_transpose();
    let i = Complex::new(0.0, 1.0);
    let g2 = gamma(GammaIndex::G2);
    let g3 = gamma(GammaIndex::G3);
    [1.0, -1.0]
        .into_iter()
        .map(|sign| {
            let current = (e + ed).max_deviation(&(g2 * (-i * SQRT_2 * sign)));
            let density = (ed * e).max_deviation(&(ComplexMatrix4::identity() + g3 * (i * sign)));
            GammaSignOutcome {
                sign,
                current_deviation: current,
                density_deviation: density,
            }
        })
        .min_by(|a, b| {
            (a.current_deviation + a.density_deviation)
                .total_cmp(&(b.current_deviation + b.density_deviation))
        })
        .expect("two candidates")
}

/// The two gamma-matrix identities quoted for representation 1, under the
/// Dirac basis with the sign reading that reproduces them.
pub fn verify_gamma_identities(tol: f64) -> AlgebraReport {
    let o = gamma_sign_outcome();
    let s = if o.sign > 0.0 { "+" } else { "-" };
    let mut report = AlgebraReport::new();
    report
        .record(
            format!("eta + eta^dag = -i sqrt2 gamma_2 (gamma_2 = {s}gamma^2, Dirac basis)"),
            o.current_deviation,
            tol,
        )
        .record(
            format!("eta^dag eta = I + i gamma_3 (gamma_3 = {s}gamma^3, Dirac basis)"),
            o.density_deviation,
            tol,
        );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_representations_pass() {
        for rep in EtaRepresentation::ALL {
            let r = verify_eta_algebra(rep, IDENTITY_TOL);
            assert!(r.passed(), "{rep}: {r:?}");
            assert_eq!(r.len(), 7);
            assert!(r.max_deviation() <= 1e-15, "{rep}: {}", r.max_deviation());
        }
    }

    #[test]
    fn perturbation_is_detected_on_nilpotency() {
        let mut e = eta(EtaRepresentation::Rep1);
        e[(0, 1)] += Complex::new(1e-6, 0.0);
        let r = verify_eta_matrix(&e, IDENTITY_TOL);
        assert!(!r.passed());
        let dev = r.get("eta^2 = 0").unwrap().max_deviation;
        // the perturbation times entries of modulus 1/sqrt2
        assert!((dev - 1e-6 / SQRT_2).abs() < 1e-12, "{dev}");
    }

    #[test]
    fn anticommutator_is_two_identity() {
        let e = eta(EtaRepresentation::Rep1);
        let ac = e.anticommutator(&e.conj_transpose());
        assert!(ac.max_deviation(&(ComplexMatrix4::identity() * 2.0)) < 1e-15);
        assert_eq!(e.det(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn dirac_basis_upper_index_reading_reproduces_both_identities() {
        let o = gamma_sign_outcome();
        assert_eq!(o.sign, 1.0);
        assert!(o.current_deviation <= 1e-15);
        assert!(o.density_deviation <= 1e-15);
        assert!(verify_gamma_identities(IDENTITY_TOL).passed());
    }

    #[test]
    #[should_panic(expected = "tolerance must be positive")]
    fn zero_tolerance_is_rejected() {
        verify_eta_algebra(EtaRepresentation::Rep1, 0.0);
    }
}
