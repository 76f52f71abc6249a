use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::{AlgebraError, Complex};

/// Relative pivot floor used by [`solve_linear_4x4`].
pub const SINGULAR_TOL: f64 = 1e-13;

/// A 2x2 complex block, used to assemble 4x4 matrices from Pauli blocks.
pub type Block2 = [[Complex; 2]; 2];

/// Dense 4x4 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex; 4]; 4],
}

/// Four-component complex column vector.
#[derive(Clone, Copy, PartialEq)]
pub struct Spinor4(pub [Complex; 4]);

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

impl ComplexMatrix4 {
    pub const fn from_rows(entries: [[Complex; 4]; 4]) -> Self {
        Self { entries }
    }

    /// Builds a matrix from real and imaginary parts given row by row.
    pub fn from_parts(re: [[f64; 4]; 4], im: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.entries[r][c] = Complex::new(re[r][c], im[r][c]);
            }
        }
        m
    }

    /// Assembles `[[upper_left, upper_right], [lower_left, lower_right]]`.
    pub fn from_blocks(ul: Block2, ur: Block2, ll: Block2, lr: Block2) -> Self {
        let mut m = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                m.entries[r][c] = ul[r][c];
                m.entries[r][c + 2] = ur[r][c];
                m.entries[r + 2][c] = ll[r][c];
                m.entries[r + 2][c + 2] = lr[r][c];
            }
        }
        m
    }

    pub const fn zero() -> Self {
        Self {
            entries: [[ZERO; 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [Complex; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.entries[i][i] = v;
        }
        m
    }

    pub fn rows(&self) -> &[[Complex; 4]; 4] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Spinor4 {
        Spinor4(std::array::from_fn(|r| self.entries[r][c]))
    }

    pub fn from_columns(cols: [Spinor4; 4]) -> Self {
        let mut m = Self::zero();
        for (c, col) in cols.iter().enumerate() {
            for r in 0..4 {
                m.entries[r][c] = col.0[r];
            }
        }
        m
    }

    /// Upper-left 2x2 block.
    pub fn upper_left(&self) -> Block2 {
        [
            [self.entries[0][0], self.entries[0][1]],
            [self.entries[1][0], self.entries[1][1]],
        ]
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z = f(*z));
        m
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.entries[c][r] = self.entries[r][c];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Hermitian adjoint.
    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Complex {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// `AB + BA`
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn row_norms(&self) -> [f64; 4] {
        std::array::from_fn(|r| {
            self.entries[r]
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_deviation(&self.transpose()) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_deviation(&self.conj_transpose()) <= tol
    }

    pub fn is_nilpotent_order2(&self, tol: f64) -> bool {
        (*self * *self).max_abs() <= tol
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_finite())
    }

    /// Determinant by partially pivoted elimination.
    pub fn det(&self) -> Complex {
        let mut a = self.entries;
        let mut det = ONE;
        for k in 0..4 {
            let p = (k..4)
                .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
                .unwrap_or(k);
            if a[p][k] == ZERO {
                return ZERO;
            }
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..4 {
                let f = a[i][k] / a[k][k];
                for j in k..4 {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
            }
        }
        det
    }

    /// Coefficients `[c0, c1, c2, c3, 1]` of the monic characteristic
    /// polynomial `det(lambda I - M) = lambda^4 + c3 lambda^3 + ... + c0`,
    /// via Faddeev-LeVerrier.
    pub fn characteristic_polynomial(&self) -> [Complex; 5] {
        let n = 4;
        let mut coeffs = [ZERO; 5];
        coeffs[n] = ONE;
        let mut m_k = Self::zero();
        for k in 1..=n {
            m_k = *self * m_k + Self::identity().scale(coeffs[n - k + 1]);
            let am = *self * m_k;
            coeffs[n - k] = -am.trace() / k as f64;
        }
        coeffs
    }

    /// Inverse through the same pivoted factorisation as the solver.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let lu = Lu4::factor(self)?;
        let cols: [Spinor4; 4] = std::array::from_fn(|c| lu.solve(&Spinor4::basis(c)));
        Ok(Self::from_columns(cols))
    }

    pub fn solve(&self, rhs: &Spinor4) -> Result<Spinor4, AlgebraError> {
        solve_linear_4x4(self, rhs)
    }
}

/// Solves `M x = rhs` with partial pivoting.
///
/// A pivot smaller than `SINGULAR_TOL` times the largest row norm of `M`
/// is reported as [`AlgebraError::SingularMatrix`].
pub fn solve_linear_4x4(m: &ComplexMatrix4, rhs: &Spinor4) -> Result<Spinor4, AlgebraError> {
    Ok(Lu4::factor(m)?.solve(rhs))
}

struct Lu4 {
    lu: [[Complex; 4]; 4],
    perm: [usize; 4],
}

impl Lu4 {
    fn factor(m: &ComplexMatrix4) -> Result<Self, AlgebraError> {
        if !m.is_finite() {
            return Err(AlgebraError::NonFinite);
        }
        let scale = m.row_norms().into_iter().fold(0.0, f64::max);
        let floor = SINGULAR_TOL * scale;
        let mut a = m.entries;
        let mut perm = [0, 1, 2, 3];
        for k in 0..4 {
            let p = (k..4)
                .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
                .unwrap_or(k);
            let pivot = a[p][k].norm();
            if pivot < floor || pivot == 0.0 {
                return Err(AlgebraError::SingularMatrix {
                    pivot,
                    threshold: floor,
                });
            }
            a.swap(p, k);
            perm.swap(p, k);
            for i in k + 1..4 {
                let f = a[i][k] / a[k][k];
                a[i][k] = f;
                for j in k + 1..4 {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
            }
        }
        Ok(Self { lu: a, perm })
    }

    fn solve(&self, rhs: &Spinor4) -> Spinor4 {
        let mut x: [Complex; 4] = std::array::from_fn(|i| rhs.0[self.perm[i]]);
        for i in 0..4 {
            for j in 0..i {
                let t = self.lu[i][j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..4).rev() {
            for j in i + 1..4 {
                let t = self.lu[i][j] * x[j];
                x[i] -= t;
            }
            x[i] /= self.lu[i][i];
        }
        Spinor4(x)
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex;
    fn index(&self, (r, c): (usize, usize)) -> &Complex {
        &self.entries[r][c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex {
        &mut self.entries[r][c]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for r in 0..4 {
            for c in 0..4 {
                self.entries[r][c] += rhs.entries[r][c];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..4 {
            for c in 0..4 {
                self.entries[r][c] -= rhs.entries[r][c];
            }
        }
        self
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m.entries[r][c] = (0..4).map(|k| self.entries[r][k] * rhs.entries[k][c]).sum();
            }
        }
        m
    }
}

impl Mul<Spinor4> for ComplexMatrix4 {
    type Output = Spinor4;
    fn mul(self, v: Spinor4) -> Spinor4 {
        Spinor4(std::array::from_fn(|r| {
            (0..4).map(|k| self.entries[r][k] * v.0[k]).sum()
        }))
    }
}

impl Mul<Complex> for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, s: Complex) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale_real(s)
    }
}

impl fmt::Debug for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix4 [")?;
        for row in &self.entries {
            write!(f, "   ")?;
            for z in row {
                write!(f, " {:>+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Spinor4 {
    pub const fn new(c: [Complex; 4]) -> Self {
        Self(c)
    }

    pub const fn zero() -> Self {
        Self([ZERO; 4])
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = ONE;
        v
    }

    pub fn components(&self) -> &[Complex; 4] {
        &self.0
    }

    /// `self^dagger other`
    pub fn inner(&self, other: &Self) -> Complex {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self^dagger M other`
    pub fn bilinear(&self, m: &ComplexMatrix4, other: &Self) -> Complex {
        self.inner(&(*m * *other))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl Index<usize> for Spinor4 {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

impl Add for Spinor4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Spinor4 {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Spinor4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Spinor4 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

impl Mul<Complex> for Spinor4 {
    type Output = Self;
    fn mul(self, s: Complex) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for Spinor4 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }
}

impl fmt::Debug for Spinor4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.0.iter().map(|z| (z.re, z.im)))
            .finish()
    }
}

/// Serialized as `[[re, im], ...]`.
impl Serialize for Spinor4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for z in &self.0 {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sample() -> ComplexMatrix4 {
        ComplexMatrix4::from_parts(
            [
                [4.0, 1.0, 0.5, 0.0],
                [1.0, 3.0, 0.0, 0.2],
                [0.0, 0.3, 5.0, 1.0],
                [0.1, 0.0, 1.0, 2.0],
            ],
            [
                [0.0, 0.5, 0.0, -1.0],
                [0.2, 0.0, 1.0, 0.0],
                [0.0, -0.4, 0.0, 0.3],
                [1.0, 0.0, 0.1, 0.5],
            ],
        )
    }

    /// Cofactor expansion, independent of the elimination path.
    fn det_cofactor(m: &ComplexMatrix4) -> Complex {
        fn det3(a: [[Complex; 3]; 3]) -> Complex {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
        let mut total = ZERO;
        for c in 0..4 {
            let minor: [[Complex; 3]; 3] = std::array::from_fn(|r| {
                let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
                std::array::from_fn(|k| m[(r + 1, cols[k])])
            });
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            total += m[(0, c)] * det3(minor) * sign;
        }
        total
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = sample();
        let d = m.det();
        let oracle = det_cofactor(&m);
        assert!((d - oracle).norm() <= 1e-12 * oracle.norm(), "{d} vs {oracle}");
    }

    #[test]
    fn characteristic_polynomial_constant_term_is_det() {
        let m = sample();
        let cp = m.characteristic_polynomial();
        assert!((cp[0] - m.det()).norm() < 1e-11);
        assert!((cp[3] + m.trace()).norm() < 1e-13);
        assert_eq!(cp[4], ONE);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let v = Spinor4::new([c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0), c(7.0, -1.0)]);
        let x = solve_linear_4x4(&ComplexMatrix4::identity(), &v).unwrap();
        assert_eq!(x, v);
    }

    #[test]
    fn solve_rejects_singular() {
        let mut m = sample();
        for c in 0..4 {
            m[(3, c)] = m[(0, c)] * 2.0;
        }
        let err = solve_linear_4x4(&m, &Spinor4::basis(0)).unwrap_err();
        assert!(matches!(err, AlgebraError::SingularMatrix { .. }));
    }

    #[test]
    fn solve_rejects_non_finite() {
        let mut m = ComplexMatrix4::identity();
        m[(1, 2)] = c(f64::NAN, 0.0);
        assert_eq!(
            solve_linear_4x4(&m, &Spinor4::basis(0)),
            Err(AlgebraError::NonFinite)
        );
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = sample();
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_deviation(&ComplexMatrix4::identity()) < 1e-14);
    }

    #[test]
    fn structural_predicates() {
        let m = sample();
        let h = m + m.conj_transpose();
        assert!(h.is_hermitian(0.0));
        assert!(!m.is_hermitian(1e-3));
        let s = m + m.transpose();
        assert!(s.is_symmetric(0.0));
        let mut n = ComplexMatrix4::zero();
        n[(0, 3)] = c(2.0, 1.0);
        assert!(n.is_nilpotent_order2(0.0));
        assert!(!m.is_nilpotent_order2(1.0));
        assert!(ComplexMatrix4::zero().is_zero(0.0));
    }

    #[test]
    fn commutator_of_matrix_with_itself_vanishes() {
        let m = sample();
        assert!(m.commutator(&m).is_zero(0.0));
        assert!(m.anticommutator(&ComplexMatrix4::identity()).max_deviation(&(m * 2.0)) == 0.0);
    }

    #[test]
    fn spinor_serializes_as_pairs() {
        let v = Spinor4::new([c(1.0, 0.0), c(0.0, -1.0), c(0.5, 0.25), c(0.0, 0.0)]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "[[1.0,0.0],[0.0,-1.0],[0.5,0.25],[0.0,0.0]]");
    }
}
