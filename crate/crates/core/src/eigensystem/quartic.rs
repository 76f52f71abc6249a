//! Closed-form roots of complex polynomials up to degree four.

use crate::algebra::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Roots of `a x^2 + b x + c`, `a != 0`, avoiding cancellation.
pub fn quadratic_roots(a: Complex, b: Complex, c: Complex) -> [Complex; 2] {
    let disc = (b * b - a * c * 4.0).sqrt();
    let q_plus = b + disc;
    let q_minus = b - disc;
    let q = if q_plus.norm() >= q_minus.norm() {
        q_plus
    } else {
        q_minus
    };
    if q == ZERO {
        return [ZERO, ZERO];
    }
    let q = q * -0.5;
    [q / a, c / q]
}

/// Roots of the monic cubic `x^3 + a x^2 + b x + c` (Cardano).
pub fn cubic_roots(a: Complex, b: Complex, c: Complex) -> [Complex; 3] {
    // x = t - a/3  ->  t^3 + p t + q = 0
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u_plus = -q / 2.0 + disc;
    let u_minus = -q / 2.0 - disc;
    let u3 = if u_plus.norm() >= u_minus.norm() {
        u_plus
    } else {
        u_minus
    };
    if u3 == ZERO {
        // p = q = 0: triple root
        return [-shift; 3];
    }
    let u = u3.cbrt();
    let omega = Complex::new(-0.5, 3f64.sqrt() / 2.0);
    let mut roots = [ZERO; 3];
    let mut w = Complex::new(1.0, 0.0);
    for r in &mut roots {
        let uk = u * w;
        *r = uk - p / (uk * 3.0) - shift;
        w *= omega;
    }
    roots
}

/// Roots of `coeffs[4] x^4 + coeffs[3] x^3 + ... + coeffs[0]` by Ferrari's
/// method. `coeffs[4]` must be nonzero.
pub fn quartic_roots(coeffs: [Complex; 5]) -> [Complex; 4] {
    let lead = coeffs[4];
    assert!(lead != ZERO, "leading quartic coefficient must be nonzero");
    let b = coeffs[3] / lead;
    let c = coeffs[2] / lead;
    let d = coeffs[1] / lead;
    let e = coeffs[0] / lead;

    // x = y - b/4  ->  y^4 + p y^2 + q y + r = 0
    let shift = b / 4.0;
    let p = c - b * b * (3.0 / 8.0);
    let q = d - b * c / 2.0 + b * b * b / 8.0;
    let r = e - b * d / 4.0 + b * b * c / 16.0 - b * b * b * b * (3.0 / 256.0);

    let scale = 1.0 + p.norm() + q.norm().sqrt() + r.norm().sqrt().sqrt();
    let ys: [Complex; 4] = if q.norm() <= 1e-14 * scale * scale * scale {
        // biquadratic in y^2
        let [z1, z2] = quadratic_roots(Complex::new(1.0, 0.0), p, r);
        let (s1, s2) = (z1.sqrt(), z2.sqrt());
        [s1, -s1, s2, -s2]
    } else {
        // resolvent: m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0, pick the
        // largest root so that sqrt(2m) stays away from zero
        let ms = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
        let m = ms
            .into_iter()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("three roots");
        let s = (m * 2.0).sqrt();
        let t = q / (s * 2.0);
        // y^2 - s y + (p/2 + m + t) = 0  and  y^2 + s y + (p/2 + m - t) = 0
        let one = Complex::new(1.0, 0.0);
        let [y1, y2] = quadratic_roots(one, -s, p / 2.0 + m + t);
        let [y3, y4] = quadratic_roots(one, s, p / 2.0 + m - t);
        [y1, y2, y3, y4]
    };
    ys.map(|y| y - shift)
}

/// Evaluates a polynomial given low-to-high coefficients.
pub fn eval_poly(coeffs: &[Complex], x: Complex) -> Complex {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    /// Expands `prod (x - r_i)` into low-to-high coefficients.
    fn from_roots(roots: &[Complex]) -> Vec<Complex> {
        let mut poly = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![ZERO; poly.len() + 1];
            for (i, &a) in poly.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            poly = next;
        }
        poly
    }

    /// Greedy matching distance between two root multisets.
    fn match_distance(found: &[Complex], expected: &[Complex]) -> f64 {
        let mut pool: Vec<Complex> = expected.to_vec();
        let mut worst: f64 = 0.0;
        for f in found {
            let (idx, d) = pool
                .iter()
                .enumerate()
                .map(|(i, e)| (i, (f - e).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            worst = worst.max(d);
            pool.remove(idx);
        }
        worst
    }

    #[test]
    fn quadratic_simple() {
        let r = quadratic_roots(c(1.0, 0.0), c(-3.0, 0.0), c(2.0, 0.0));
        assert!(match_distance(&r, &[c(1.0, 0.0), c(2.0, 0.0)]) < 1e-15);
    }

    #[test]
    fn cubic_triple_root() {
        // (x - 2)^3
        let r = cubic_roots(c(-6.0, 0.0), c(12.0, 0.0), c(-8.0, 0.0));
        assert!(match_distance(&r, &[c(2.0, 0.0); 3]) < 1e-12);
    }

    #[test]
    fn quartic_zero_polynomial_roots() {
        let r = quartic_roots([ZERO, ZERO, ZERO, ZERO, c(1.0, 0.0)]);
        assert!(r.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn quartic_biquadratic_pairs() {
        // (x^2 - 2)^2
        let r = quartic_roots([c(4.0, 0.0), ZERO, c(-4.0, 0.0), ZERO, c(1.0, 0.0)]);
        let s = 2f64.sqrt();
        assert!(match_distance(&r, &[c(s, 0.0), c(s, 0.0), c(-s, 0.0), c(-s, 0.0)]) < 1e-7);
    }

    proptest! {
        #[test]
        fn quartic_recovers_well_separated_roots(
            parts in proptest::collection::vec(-5.0f64..5.0, 8)
        ) {
            let roots: Vec<Complex> = parts.chunks(2).map(|p| c(p[0], p[1])).collect();
            let min_gap = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(i, j)| (roots[i] - roots[j]).norm())
                .fold(f64::INFINITY, f64::min);
            prop_assume!(min_gap > 0.1);
            let poly = from_roots(&roots);
            let coeffs: [Complex; 5] = poly.clone().try_into().unwrap();
            let found = quartic_roots(coeffs);
            prop_assert!(match_distance(&found, &roots) < 1e-8);
            for f in found {
                prop_assert!(eval_poly(&poly, f).norm() < 1e-7);
            }
        }

        #[test]
        fn cubic_residuals_vanish(parts in proptest::collection::vec(-3.0f64..3.0, 6)) {
            let roots: Vec<Complex> = parts.chunks(2).map(|p| c(p[0], p[1])).collect();
            let poly = from_roots(&roots);
            let found = cubic_roots(poly[2], poly[1], poly[0]);
            for f in found {
                prop_assert!(eval_poly(&poly, f).norm() < 1e-8);
            }
        }
    }
}
