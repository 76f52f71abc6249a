//! Complex 4x4 matrix kernel and the special matrices of the first-order
//! equation: Pauli blocks, Dirac gamma matrices and the nilpotent `eta`.

mod matrix;
mod report;
mod special;
mod verify;

use thiserror::Error;

pub use matrix::{solve_linear_4x4, Block2, ComplexMatrix4, Spinor4, SINGULAR_TOL};
pub use report::{AlgebraReport, Check};
pub use special::{
    block_add, block_scale, eta, eta_dagger, gamma, pauli, EtaRepresentation, GammaIndex,
};
pub use verify::{
    gamma_sign_outcome, verify_eta_algebra, verify_eta_matrix, verify_gamma_identities,
    GammaSignOutcome, IDENTITY_TOL,
};

pub type Complex = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("singular matrix: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("no gamma matrix with index {0}; expected one of 0, 1, 2, 3, 5")]
    InvalidGammaIndex(u8),
    #[error("unknown eta representation {0:?}; expected rep1 or rep2")]
    UnknownRepresentation(String),
}
