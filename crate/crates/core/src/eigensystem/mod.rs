//! Plane-wave eigenstates of the momentum-space operator `E eta + m eta^dag`
//! and a small numeric eigensolver used to cross-check them.

pub mod quartic;
mod verify;

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{eta, eta_dagger, Complex, ComplexMatrix4, EtaRepresentation, Spinor4};

pub use verify::verify_eigensystem;

/// Electron rest energy in eV.
pub const ELECTRON_MASS_EV: f64 = 510_998.95;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("invalid physical parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("eigenspace of {eigenvalue} cannot be labelled by spin (upper block determinant {det:.3e})")]
    SpinLabelSingular { eigenvalue: Complex, det: f64 },
    #[error("eigenvalue must be nonzero to build a spectral projector")]
    ZeroEigenvalue,
    #[error("unknown spin {0:?}; expected up or down")]
    UnknownSpin(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// Position of the unit entry in the upper two spinor components.
    pub fn upper_index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Up => "up",
            Spin::Down => "down",
        })
    }
}

impl FromStr for Spin {
    type Err = EigenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "up" | "u" | "+" => Ok(Spin::Up),
            "down" | "d" | "-" => Ok(Spin::Down),
            _ => Err(EigenError::UnknownSpin(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    PositiveZ,
    NegativeZ,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::PositiveZ => 1.0,
            Direction::NegativeZ => -1.0,
        }
    }
}

/// The four printed eigenstates `u(1)..u(4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenstateKind {
    U1,
    U2,
    U3,
    U4,
}

impl EigenstateKind {
    pub const ALL: [Self; 4] = [Self::U1, Self::U2, Self::U3, Self::U4];

    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            1 => Some(Self::U1),
            2 => Some(Self::U2),
            3 => Some(Self::U3),
            4 => Some(Self::U4),
            _ => None,
        }
    }

    pub fn spin(self) -> Spin {
        match self {
            Self::U1 | Self::U3 => Spin::Up,
            Self::U2 | Self::U4 => Spin::Down,
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Self::U1 | Self::U2 => Direction::PositiveZ,
            Self::U3 | Self::U4 => Direction::NegativeZ,
        }
    }

    pub fn of(spin: Spin, direction: Direction) -> Self {
        match (spin, direction) {
            (Spin::Up, Direction::PositiveZ) => Self::U1,
            (Spin::Down, Direction::PositiveZ) => Self::U2,
            (Spin::Up, Direction::NegativeZ) => Self::U3,
            (Spin::Down, Direction::NegativeZ) => Self::U4,
        }
    }
}

/// Energy, mass and step height in eV (natural units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    pub energy: f64,
    pub mass: f64,
    pub potential: f64,
}

impl PhysicalParams {
    pub fn new(energy: f64, mass: f64, potential: f64) -> Result<Self, EigenError> {
        positive("energy", energy)?;
        positive("mass", mass)?;
        if !potential.is_finite() {
            return Err(EigenError::InvalidParameter {
                name: "potential",
                value: potential,
                reason: "must be finite",
            });
        }
        Ok(Self {
            energy,
            mass,
            potential,
        })
    }

    /// `1 / (E + m)`
    pub fn alpha(&self) -> f64 {
        1.0 / (self.energy + self.mass)
    }

    /// `sqrt(2 E m)`
    pub fn momentum(&self) -> f64 {
        (2.0 * self.energy * self.mass).sqrt()
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<(), EigenError> {
    if !value.is_finite() || value <= 0.0 {
        return Err(EigenError::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        });
    }
    Ok(())
}

/// A spinor together with its kinematic labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneWaveState {
    #[serde(rename = "components")]
    pub spinor: Spinor4,
    /// Signed momentum along z, eV.
    pub momentum: f64,
    /// Kinetic energy, eV.
    pub energy: f64,
    pub spin: Spin,
    pub direction: Direction,
}

impl PlaneWaveState {
    /// `u^dag u`; the printed states all give 2.
    pub fn normalization(&self) -> f64 {
        self.spinor.norm_sqr()
    }

    /// Relative deviation of `p^2` from `2 E m`.
    pub fn shell_deviation(&self, mass: f64) -> f64 {
        let target = 2.0 * self.energy * mass;
        (self.momentum * self.momentum - target).abs() / target.abs()
    }
}

/// `E eta + m eta^dag`. Negative `energy` is allowed and gives the operator
/// inside a barrier higher than the particle energy.
pub fn momentum_operator(energy: f64, mass: f64, rep: EtaRepresentation) -> ComplexMatrix4 {
    eta(rep) * energy + eta_dagger(rep) * mass
}

/// Spinor of the printed form with kinetic energy `K`, mass `m` and
/// (possibly complex) momentum `p`:
///
/// ```text
/// up   = (1, 0, i(K - m)/(K + m), -sqrt2 p/(K + m))
/// down = (0, 1, sqrt2 p/(K + m), -i(K - m)/(K + m))
/// ```
///
/// With `K = E - V0 < 0` and `p = i kappa` this reproduces the decaying
/// spinors under a high step, with `1/(K + m) = -1/(V0 - E - m)`.
pub fn plane_wave_spinor(spin: Spin, kinetic: f64, mass: f64, momentum: Complex) -> Spinor4 {
    let alpha = 1.0 / (kinetic + mass);
    let i = Complex::new(0.0, 1.0);
    let third = i * (alpha * (kinetic - mass));
    let fourth = momentum * (SQRT_2 * alpha);
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    match spin {
        Spin::Up => Spinor4::new([one, zero, third, -fourth]),
        Spin::Down => Spinor4::new([zero, one, fourth, -third]),
    }
}

/// The printed eigenstate `u(k)` at energy `E`, mass `m`, with
/// `p_z = sqrt(2 E m)` and `alpha = 1/(E + m)`.
///
/// # Panics
///
/// If `energy` or `mass` is not finite and positive.
pub fn analytic_eigenstate(kind: EigenstateKind, energy: f64, mass: f64) -> PlaneWaveState {
    let params = PhysicalParams::new(energy, mass, 0.0).expect("energy and mass must be > 0");
    let direction = kind.direction();
    let momentum = direction.sign() * params.momentum();
    PlaneWaveState {
        spinor: plane_wave_spinor(kind.spin(), energy, mass, Complex::new(momentum, 0.0)),
        momentum,
        energy,
        spin: kind.spin(),
        direction,
    }
}

/// Spectral projector onto the `eigenvalue` eigenspace of an operator that
/// squares to `eigenvalue^2 I`, i.e. `(M + k I) / (2k)`.
pub fn eigenspace_projector(
    operator: &ComplexMatrix4,
    eigenvalue: Complex,
) -> Result<ComplexMatrix4, EigenError> {
    if eigenvalue.norm() == 0.0 {
        return Err(EigenError::ZeroEigenvalue);
    }
    Ok((*operator + ComplexMatrix4::identity() * eigenvalue) * (0.5 / eigenvalue))
}

/// Basis of the `eigenvalue` eigenspace whose upper components are `(1, 0)`
/// and `(0, 1)`, the spin-up and spin-down members.
pub fn spin_labelled_basis(
    operator: &ComplexMatrix4,
    eigenvalue: Complex,
) -> Result<[Spinor4; 2], EigenError> {
    let p = eigenspace_projector(operator, eigenvalue)?;
    let [[a, b], [c, d]] = p.upper_left();
    let det = a * d - b * c;
    let scale = p.max_abs().powi(2);
    if det.norm() <= 1e-12 * scale {
        return Err(EigenError::SpinLabelSingular {
            eigenvalue,
            det: det.norm(),
        });
    }
    // columns 0, 1 of P times inverse of their upper 2x2 block
    let (c0, c1) = (p.column(0), p.column(1));
    let up = c0 * (d / det) + c1 * (-c / det);
    let down = c0 * (-b / det) + c1 * (a / det);
    Ok([up, down])
}

/// One distinct eigenvalue with its numerically extracted eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    pub eigenvalue: Complex,
    pub algebraic_multiplicity: usize,
    /// Orthonormal basis of the null space of `M - lambda I`.
    pub vectors: Vec<Spinor4>,
}

impl Eigenspace {
    pub fn geometric_multiplicity(&self) -> usize {
        self.vectors.len()
    }

    /// `|v - P v| / |v|` with `P` the orthogonal projector onto the span.
    pub fn projection_residual(&self, v: &Spinor4) -> f64 {
        let mut rest = *v;
        for b in &self.vectors {
            rest = rest - *b * b.inner(v);
        }
        rest.norm() / v.norm()
    }
}

/// Eigenvalues (with multiplicity) and eigenspaces of a 4x4 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: [Complex; 4],
    pub eigenspaces: Vec<Eigenspace>,
    /// Some eigenvalue has fewer eigenvectors than its multiplicity.
    pub defective: bool,
}

impl EigenDecomposition {
    pub fn pairs(&self) -> Vec<(Complex, Spinor4)> {
        self.eigenspaces
            .iter()
            .flat_map(|s| s.vectors.iter().map(move |v| (s.eigenvalue, *v)))
            .collect()
    }

    /// Largest `|M v - lambda v| / (|M| |v|)` over the returned pairs.
    pub fn max_residual(&self, m: &ComplexMatrix4) -> f64 {
        let norm = m.frobenius_norm().max(f64::MIN_POSITIVE);
        self.pairs()
            .iter()
            .map(|(l, v)| (*m * *v - *v * *l).norm() / (norm * v.norm()))
            .fold(0.0, f64::max)
    }

    /// Eigenspace whose eigenvalue is nearest to `target`.
    pub fn nearest(&self, target: Complex) -> Option<&Eigenspace> {
        self.eigenspaces
            .iter()
            .min_by(|a, b| (a.eigenvalue - target).norm().total_cmp(&(b.eigenvalue - target).norm()))
    }
}

const CLUSTER_TOL: f64 = 1e-2;
const RANK_TOL: f64 = 1e-8;

/// Eigen-decomposition of a 4x4 complex matrix.
///
/// Eigenvalues come from the closed-form quartic roots of the
/// characteristic polynomial, clustered and refined by Newton steps on
/// `det(M - lambda I)` using the resolvent trace; eigenvectors are the null
/// space of `M - lambda I` under complete pivoting.
pub fn numeric_eigensystem(m: &ComplexMatrix4) -> EigenDecomposition {
    let raw = quartic::quartic_roots(m.characteristic_polynomial());
    let scale = m.frobenius_norm();
    let radius = raw.iter().map(|z| z.norm()).fold(scale * 1e-8, f64::max);

    let mut clusters: Vec<Vec<Complex>> = Vec::new();
    for r in raw {
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|x| (x - r).norm() <= CLUSTER_TOL * radius))
        {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }

    let mut refined: Vec<(Complex, usize)> = Vec::new();
    for cluster in clusters {
        let n = cluster.len();
        let mean = cluster.iter().sum::<Complex>() / n as f64;
        match newton_polish(m, mean, n, scale, CLUSTER_TOL * radius * 4.0 + f64::MIN_POSITIVE) {
            Some(l) => refined.push((l, n)),
            None => {
                for r in cluster {
                    let l = newton_polish(m, r, 1, scale, f64::INFINITY).unwrap_or(r);
                    refined.push((l, 1));
                }
            }
        }
    }

    // re-merge members that converged onto the same value
    let mut spaces: Vec<(Complex, usize)> = Vec::new();
    for (l, n) in refined {
        match spaces
            .iter_mut()
            .find(|(x, _)| (*x - l).norm() <= 1e-9 * radius.max(scale * 1e-12))
        {
            Some(s) => s.1 += n,
            None => spaces.push((l, n)),
        }
    }
    spaces.sort_by(|a, b| b.0.re.total_cmp(&a.0.re).then(b.0.im.total_cmp(&a.0.im)));

    let mut eigenvalues = Vec::with_capacity(4);
    let mut eigenspaces = Vec::with_capacity(spaces.len());
    let mut defective = false;
    for (l, n) in spaces {
        eigenvalues.extend(std::iter::repeat(l).take(n));
        let shifted = *m - ComplexMatrix4::identity() * l;
        let vectors = orthonormalize(null_space(&shifted, RANK_TOL));
        defective |= vectors.len() < n;
        eigenspaces.push(Eigenspace {
            eigenvalue: l,
            algebraic_multiplicity: n,
            vectors,
        });
    }
    EigenDecomposition {
        eigenvalues: eigenvalues.try_into().expect("four eigenvalues"),
        eigenspaces,
        defective,
    }
}

/// Newton iteration for a root of multiplicity `mult` of
/// `det(M - lambda I)`: `lambda += mult / tr((M - lambda I)^-1)`.
/// Returns `None` when the iterate leaves the `max_travel` neighbourhood.
fn newton_polish(
    m: &ComplexMatrix4,
    start: Complex,
    mult: usize,
    scale: f64,
    max_travel: f64,
) -> Option<Complex> {
    let mut l = start;
    for _ in 0..200 {
        let shifted = *m - ComplexMatrix4::identity() * l;
        let Ok(inv) = shifted.inverse() else {
            break;
        };
        let tr = inv.trace();
        if tr.norm() == 0.0 || !tr.is_finite() {
            break;
        }
        let step = Complex::new(mult as f64, 0.0) / tr;
        l += step;
        if (l - start).norm() > max_travel {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * l.norm().max(scale * 1e-6) {
            break;
        }
    }
    Some(l)
}

/// Basis of the null space of `a` via Gauss-Jordan elimination with
/// complete pivoting; pivots below `rel_tol * max|a|` count as zero.
fn null_space(a: &ComplexMatrix4, rel_tol: f64) -> Vec<Spinor4> {
    let mut rows = *a.rows();
    let tol = rel_tol * a.max_abs().max(f64::MIN_POSITIVE);
    let mut col_perm = [0usize, 1, 2, 3];
    let mut rank = 0;
    while rank < 4 {
        let mut best = (rank, rank, 0.0);
        for (r, row) in rows.iter().enumerate().skip(rank) {
            for (c, z) in row.iter().enumerate().skip(rank) {
                if z.norm() > best.2 {
                    best = (r, c, z.norm());
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        rows.swap(rank, best.0);
        for row in rows.iter_mut() {
            row.swap(rank, best.1);
        }
        col_perm.swap(rank, best.1);
        let pivot = rows[rank][rank];
        for z in rows[rank].iter_mut() {
            *z /= pivot;
        }
        for r in 0..4 {
            if r != rank {
                let f = rows[r][rank];
                for c in 0..4 {
                    let t = rows[rank][c];
                    rows[r][c] -= f * t;
                }
            }
        }
        rank += 1;
    }
    (rank..4)
        .map(|free| {
            let mut permuted = [Complex::new(0.0, 0.0); 4];
            permuted[free] = Complex::new(1.0, 0.0);
            for (p, row) in rows.iter().enumerate().take(rank) {
                permuted[p] = -row[free];
            }
            let mut v = [Complex::new(0.0, 0.0); 4];
            for (k, &orig) in col_perm.iter().enumerate() {
                v[orig] = permuted[k];
            }
            Spinor4::new(v)
        })
        .collect()
}

fn orthonormalize(vectors: Vec<Spinor4>) -> Vec<Spinor4> {
    let mut basis: Vec<Spinor4> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v;
        for b in &basis {
            w = w - *b * b.inner(&w);
        }
        let n = w.norm();
        if n > 0.0 {
            basis.push(w * (1.0 / n));
        }
    }
    basis
}
