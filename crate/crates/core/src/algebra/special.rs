//! Pauli blocks, Dirac-basis gamma matrices and the two nilpotent `eta`
//! representations.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Block2, Complex, ComplexMatrix4};

const Z: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// Pauli matrix `sigma_k` for `k = 1, 2, 3`; `k = 0` gives the 2x2 identity.
pub fn pauli(k: usize) -> Block2 {
    match k {
        0 => [[ONE, Z], [Z, ONE]],
        1 => [[Z, ONE], [ONE, Z]],
        2 => [[Z, -I], [I, Z]],
        3 => [[ONE, Z], [Z, -ONE]],
        _ => panic!("pauli index {k} out of range 0..=3"),
    }
}

pub fn block_scale(b: Block2, s: Complex) -> Block2 {
    b.map(|row| row.map(|z| z * s))
}

pub fn block_add(a: Block2, b: Block2) -> Block2 {
    std::array::from_fn(|r| std::array::from_fn(|c| a[r][c] + b[r][c]))
}

const ZERO_BLOCK: Block2 = [[Z; 2]; 2];

/// Index of a Dirac gamma matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaIndex {
    G0,
    G1,
    G2,
    G3,
    G5,
}

impl TryFrom<u8> for GammaIndex {
    type Error = AlgebraError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Ok(match v {
            0 => Self::G0,
            1 => Self::G1,
            2 => Self::G2,
            3 => Self::G3,
            5 => Self::G5,
            other => return Err(AlgebraError::InvalidGammaIndex(other)),
        })
    }
}

/// Dirac-basis gamma matrix. `gamma^0 = diag(1, 1, -1, -1)`,
/// `gamma^k = [[0, sigma_k], [-sigma_k, 0]]`, `gamma^5 = i g0 g1 g2 g3`.
pub fn gamma(index: GammaIndex) -> ComplexMatrix4 {
    match index {
        GammaIndex::G0 => ComplexMatrix4::from_blocks(
            pauli(0),
            ZERO_BLOCK,
            ZERO_BLOCK,
            block_scale(pauli(0), -ONE),
        ),
        GammaIndex::G1 | GammaIndex::G2 | GammaIndex::G3 => {
            let k = match index {
                GammaIndex::G1 => 1,
                GammaIndex::G2 => 2,
                _ => 3,
            };
            let s = pauli(k);
            ComplexMatrix4::from_blocks(ZERO_BLOCK, s, block_scale(s, -ONE), ZERO_BLOCK)
        }
        GammaIndex::G5 => ComplexMatrix4::from_blocks(ZERO_BLOCK, pauli(0), pauli(0), ZERO_BLOCK),
    }
}

/// Which of the two printed `eta` matrices to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaRepresentation {
    /// `-(i/sqrt2) [[s1, s2], [-s2, s1]]`; the default throughout the crate.
    #[default]
    Rep1,
    /// `(i/sqrt2) [[0, I + s2], [I - s2, 0]]`
    Rep2,
}

impl EtaRepresentation {
    pub const ALL: [Self; 2] = [Self::Rep1, Self::Rep2];
}

impl fmt::Display for EtaRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rep1 => "rep1",
            Self::Rep2 => "rep2",
        })
    }
}

impl FromStr for EtaRepresentation {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rep1" | "1" => Ok(Self::Rep1),
            "rep2" | "2" => Ok(Self::Rep2),
            _ => Err(AlgebraError::UnknownRepresentation(s.to_string())),
        }
    }
}

/// The symmetric nilpotent matrix `eta` in the chosen representation.
pub fn eta(rep: EtaRepresentation) -> ComplexMatrix4 {
    match rep {
        EtaRepresentation::Rep1 => {
            let h = FRAC_1_SQRT_2;
            ComplexMatrix4::from_parts(
                [
                    [0.0, 0.0, 0.0, -h],
                    [0.0, 0.0, h, 0.0],
                    [0.0, h, 0.0, 0.0],
                    [-h, 0.0, 0.0, 0.0],
                ],
                [
                    [0.0, -h, 0.0, 0.0],
                    [-h, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 0.0, -h],
                    [0.0, 0.0, -h, 0.0],
                ],
            )
        }
        EtaRepresentation::Rep2 => {
            let f = I * FRAC_1_SQRT_2;
            ComplexMatrix4::from_blocks(
                ZERO_BLOCK,
                block_scale(block_add(pauli(0), pauli(2)), f),
                block_scale(block_add(pauli(0), block_scale(pauli(2), -ONE)), f),
                ZERO_BLOCK,
            )
        }
    }
}

pub fn eta_dagger(rep: EtaRepresentation) -> ComplexMatrix4 {
    eta(rep).conj_transpose()
}
