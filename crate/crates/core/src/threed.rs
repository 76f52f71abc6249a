//! Three-dimensional operator algebra: the `mu` matrices, the continuity
//! kernels `Sigma_i` and `Gamma`, and the shell structure of
//! `mu . p - E eta - m eta^dag`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    block_scale, eta, eta_dagger, gamma, pauli, AlgebraReport, Block2, Complex, ComplexMatrix4,
    EtaRepresentation, GammaIndex, IDENTITY_TOL,
};

/// Tolerance on the gamma-product versus block-form comparison.
pub const CONVENTION_TOL: f64 = 1e-15;
/// Threshold on `|det| / prod(row norms)` below which the operator counts
/// as singular.
pub const SHELL_DET_TOL: f64 = 1e-10;
/// Relative tolerance of the squared-operator identities.
pub const SQUARE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThreeDError {
    #[error("mu_{index} from gamma products differs from the block form by {deviation:.3e}")]
    ConventionMismatch { index: usize, deviation: f64 },
    #[error("momentum component {0} is not finite")]
    NonFinite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuTriple(pub [ComplexMatrix4; 3]);

impl MuTriple {
    /// `mu_i` for `i` in `1..=3`.
    pub fn get(&self, i: usize) -> &ComplexMatrix4 {
        &self.0[i - 1]
    }

    /// `mu_1 p_1 + mu_2 p_2 + mu_3 p_3`
    pub fn dot(&self, p: &Momentum3) -> ComplexMatrix4 {
        self.0
            .iter()
            .zip(p.components())
            .fold(ComplexMatrix4::zero(), |acc, (mu, pi)| acc + *mu * pi)
    }
}

const ZERO_BLOCK: Block2 = [[Complex::new(0.0, 0.0); 2]; 2];

/// `diag(s3, s3)`, `antidiag(s2, s2)`, `diag(s2, -s2)`.
pub fn printed_mu() -> MuTriple {
    let s2 = pauli(2);
    let s3 = pauli(3);
    MuTriple([
        ComplexMatrix4::from_blocks(s3, ZERO_BLOCK, ZERO_BLOCK, s3),
        ComplexMatrix4::from_blocks(ZERO_BLOCK, s2, s2, ZERO_BLOCK),
        ComplexMatrix4::from_blocks(
            s2,
            ZERO_BLOCK,
            ZERO_BLOCK,
            block_scale(s2, Complex::new(-1.0, 0.0)),
        ),
    ])
}

/// `i g1 g2`, `g0 g2`, `g2 g5` in the Dirac basis.
pub fn mu_from_gammas() -> MuTriple {
    let g = gamma;
    let i = Complex::new(0.0, 1.0);
    MuTriple([
        (g(GammaIndex::G1) * g(GammaIndex::G2)) * i,
        g(GammaIndex::G0) * g(GammaIndex::G2),
        g(GammaIndex::G2) * g(GammaIndex::G5),
    ])
}

/// The printed block forms, after confirming the gamma products agree.
pub fn mu_matrices() -> Result<MuTriple, ThreeDError> {
    let printed = printed_mu();
    let products = mu_from_gammas();
    for (k, (a, b)) in printed.0.iter().zip(products.0.iter()).enumerate() {
        let deviation = a.max_deviation(b);
        if deviation > CONVENTION_TOL {
            return Err(ThreeDError::ConventionMismatch {
                index: k + 1,
                deviation,
            });
        }
    }
    Ok(printed)
}

/// Momentum vector in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momentum3 {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl Momentum3 {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self, ThreeDError> {
        for c in [p1, p2, p3] {
            if !c.is_finite() {
                return Err(ThreeDError::NonFinite(c));
            }
        }
        Ok(Self { p1, p2, p3 })
    }

    /// `magnitude * direction / |direction|`
    pub fn along(direction: [f64; 3], magnitude: f64) -> Result<Self, ThreeDError> {
        let n = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
        let [a, b, c] = direction.map(|x| x * magnitude / n);
        Self::new(a, b, c)
    }

    pub fn components(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3
    }
}

/// `Sigma_i = i mu_i (eta + eta^dag) gamma_3` and `Gamma = i eta^dag eta gamma_3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityObjects {
    pub sigma: [ComplexMatrix4; 3],
    pub gamma_density: ComplexMatrix4,
}

impl ContinuityObjects {
    pub fn new(mu: &MuTriple, rep: EtaRepresentation) -> Self {
        let i = Complex::new(0.0, 1.0);
        let e = eta(rep);
        let ed = eta_dagger(rep);
        let g3 = gamma(GammaIndex::G3);
        Self {
            sigma: mu.0.map(|m| m * (e + ed) * g3 * i),
            gamma_density: ed * e * g3 * i,
        }
    }
}

/// Hermiticity of `mu_i` and `{mu_i, mu_j} = 2 delta_ij I`.
pub fn verify_mu_algebra(mu: &MuTriple, tol: f64) -> AlgebraReport {
    let mut report = AlgebraReport::new();
    for i in 1..=3 {
        let m = mu.get(i);
        report.record(
            format!("mu_{i} Hermitian"),
            m.max_deviation(&m.conj_transpose()),
            tol,
        );
    }
    for i in 1..=3 {
        for j in i..=3 {
            let target = if i == j {
                ComplexMatrix4::identity() * 2.0
            } else {
                ComplexMatrix4::zero()
            };
            report.record(
                format!("{{mu_{i}, mu_{j}}} = {}", if i == j { "2I" } else { "0" }),
                mu.get(i).anticommutator(mu.get(j)).max_deviation(&target),
                tol,
            );
        }
    }
    report
}

/// The commutation relations used to derive the 3D continuity equation,
/// plus Hermiticity of `Sigma_i` and `Gamma`.
pub fn verify_continuity_identities(rep: EtaRepresentation) -> AlgebraReport {
    let tol = IDENTITY_TOL;
    let mu = printed_mu();
    let e = eta(rep);
    let ed = eta_dagger(rep);
    let g3 = gamma(GammaIndex::G3);
    let sum = e + ed;
    let mut report = AlgebraReport::new();
    for i in 1..=3 {
        report.record(
            format!("[mu_{i}, gamma_3] = 0"),
            mu.get(i).commutator(&g3).max_abs(),
            tol,
        );
    }
    for i in 1..=3 {
        report.record(
            format!("{{mu_{i}, eta + eta^dag}} = 0"),
            mu.get(i).anticommutator(&sum).max_abs(),
            tol,
        );
    }
    report
        .record("[eta eta^dag, gamma_3] = 0", (e * ed).commutator(&g3).max_abs(), tol)
        .record("{eta + eta^dag, gamma_3} = 0", sum.anticommutator(&g3).max_abs(), tol);
    let objs = ContinuityObjects::new(&mu, rep);
    for (k, s) in objs.sigma.iter().enumerate() {
        report.record(
            format!("Sigma_{} Hermitian", k + 1),
            s.max_deviation(&s.conj_transpose()),
            tol,
        );
    }
    let g = objs.gamma_density;
    report.record("Gamma Hermitian", g.max_deviation(&g.conj_transpose()), tol);
    report
}

/// `mu` algebra and continuity relations for one representation.
pub fn verify_threed(rep: EtaRepresentation) -> AlgebraReport {
    let mut report = verify_mu_algebra(&printed_mu(), IDENTITY_TOL);
    report.extend(verify_continuity_identities(rep));
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellCheck {
    pub is_singular: bool,
    pub det_magnitude: f64,
    /// `|det| / prod(row norms)`
    pub normalized_det: f64,
    /// `| |p|^2 - 2Em | / 2Em`
    pub shell_offset: f64,
}

fn shell_check_of(op: &ComplexMatrix4, energy: f64, mass: f64, p: &Momentum3) -> ShellCheck {
    let det = op.det().norm();
    let rows: f64 = op.row_norms().iter().product();
    let normalized = if rows > 0.0 { det / rows } else { 0.0 };
    let target = 2.0 * energy * mass;
    ShellCheck {
        is_singular: normalized <= SHELL_DET_TOL,
        det_magnitude: det,
        normalized_det: normalized,
        shell_offset: (p.norm_sqr() - target).abs() / target,
    }
}

/// Singularity of `mu . p - E eta - m eta^dag` (Rep1 `eta`).
///
/// For this operator `mu . p` anticommutes with `E eta + m eta^dag`, so
/// its square is `(|p|^2 + 2Em) I` and the determinant never vanishes for
/// real `p`; see [`shell_determinant_closed_form`]. Small values of the
/// normalized determinant arise only from the scale separation of `E`
/// and `m`.
pub fn schrodinger_reduction_check(energy: f64, mass: f64, p: &Momentum3) -> ShellCheck {
    let rep = EtaRepresentation::Rep1;
    let op = printed_mu().dot(p) - eta(rep) * energy - eta_dagger(rep) * mass;
    shell_check_of(&op, energy, mass, p)
}

/// Same test for `i mu . p - E eta - m eta^dag`, whose square is
/// `(2Em - |p|^2) I`; this one is singular exactly on the shell.
pub fn imaginary_momentum_check(energy: f64, mass: f64, p: &Momentum3) -> ShellCheck {
    let rep = EtaRepresentation::Rep1;
    let op = printed_mu().dot(p) * Complex::new(0.0, 1.0)
        - eta(rep) * energy
        - eta_dagger(rep) * mass;
    shell_check_of(&op, energy, mass, p)
}

/// `det(mu . p - E eta - m eta^dag) = (|p|^2 + 2Em)^2`.
pub fn shell_determinant_closed_form(energy: f64, mass: f64, p: &Momentum3) -> f64 {
    (p.norm_sqr() + 2.0 * energy * mass).powi(2)
}

/// `(mu . p)^2 = |p|^2 I`, `(E eta + m eta^dag)^2 = 2Em I`, and the cross
/// term `{mu . p, E eta + m eta^dag}`, each relative to its natural scale.
pub fn squared_operator_check(
    p: &Momentum3,
    energy: f64,
    mass: f64,
    rep: EtaRepresentation,
) -> AlgebraReport {
    let mu_p = printed_mu().dot(p);
    let pp = p.norm_sqr();
    let m_op = eta(rep) * energy + eta_dagger(rep) * mass;
    let two_em = 2.0 * energy * mass;
    let id = ComplexMatrix4::identity();
    let rel = |dev: f64, scale: f64| if scale > 0.0 { dev / scale } else { dev };
    let mut report = AlgebraReport::new();
    report
        .record(
            "(mu.p)^2 = |p|^2 I",
            rel((mu_p * mu_p).max_deviation(&(id * pp)), pp),
            SQUARE_TOL,
        )
        .record(
            "(E eta + m eta^dag)^2 = 2Em I",
            rel((m_op * m_op).max_deviation(&(id * two_em)), two_em),
            SQUARE_TOL,
        )
        .record(
            "{mu.p, E eta + m eta^dag} = 0",
            rel(mu_p.anticommutator(&m_op).max_abs(), pp.sqrt() * (energy + mass)),
            SQUARE_TOL,
        );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::ELECTRON_MASS_EV as ME;

    #[test]
    fn printed_entries() {
        let mu = mu_matrices().unwrap();
        assert_eq!(mu.get(1)[(0, 0)], Complex::new(1.0, 0.0));
        assert_eq!(mu.get(2)[(0, 3)], Complex::new(0.0, -1.0));
        assert!(mu.get(1).anticommutator(mu.get(2)).is_zero(0.0));
    }

    #[test]
    fn gamma_products_match_blocks() {
        let a = printed_mu();
        let b = mu_from_gammas();
        for k in 0..3 {
            assert!(a.0[k].max_deviation(&b.0[k]) <= CONVENTION_TOL);
        }
    }

    #[test]
    fn identities_hold_for_both_representations() {
        for rep in EtaRepresentation::ALL {
            let r = verify_threed(rep);
            assert!(r.passed(), "{rep}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(r.max_deviation() <= 1e-15);
            assert!(r.get("[mu_2, gamma_3] = 0").is_some());
            assert!(r.get("{eta + eta^dag, gamma_3} = 0").is_some());
        }
    }

    #[test]
    fn printed_operator_determinant_closed_form() {
        let p = Momentum3::new(3.0, -1.0, 2.0).unwrap();
        let (e, m) = (1.3, 0.7);
        let op = printed_mu().dot(&p)
            - eta(EtaRepresentation::Rep1) * e
            - eta_dagger(EtaRepresentation::Rep1) * m;
        let want = shell_determinant_closed_form(e, m, &p);
        assert!((op.det().re - want).abs() <= 1e-12 * want);
        assert!(op.det().im.abs() <= 1e-12 * want);
    }

    #[test]
    fn imaginary_momentum_operator_is_singular_on_shell() {
        let e = 100.0;
        let on = Momentum3::along([1.0, 2.0, 2.0], (2.0 * e * ME).sqrt()).unwrap();
        assert!(imaginary_momentum_check(e, ME, &on).is_singular);
        let off = Momentum3::along([1.0, 2.0, 2.0], (4.0 * e * ME).sqrt()).unwrap();
        assert!(!imaginary_momentum_check(e, ME, &off).is_singular);
    }

    #[test]
    fn squared_operators() {
        let p = Momentum3::new(0.0, 0.0, 5.0).unwrap();
        assert!(squared_operator_check(&p, 1.0, 1.0, EtaRepresentation::Rep1).passed());
        let m = eta(EtaRepresentation::Rep1) + eta_dagger(EtaRepresentation::Rep1);
        assert!((m * m).max_deviation(&(ComplexMatrix4::identity() * 2.0)) < 1e-15);
    }

    #[test]
    fn momentum_rejects_non_finite() {
        assert!(Momentum3::new(f64::NAN, 0.0, 0.0).is_err());
    }
}
