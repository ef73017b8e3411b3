//! Gauss–Legendre nodes on `[-1, 1]`, used in `x = cos(theta)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

/// Nodes `x_i` (ascending) and weights `w_i` with `sum w_i f(x_i) ~ int_{-1}^{1} f`.
/// Exact for polynomials of degree `<= 2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let nf = n as f64;
    // roots are symmetric; solve for the positive half and mirror
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Polar nodes for `int_0^pi f(theta) sin(theta) dtheta`: `theta_i = acos(x_i)`
/// sorted ascending, with the matching Gauss–Legendre weights.
pub fn theta_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    // x ascending -> theta descending; reverse
    let theta = x.iter().rev().map(|v| v.acos()).collect();
    let weights = w.into_iter().rev().collect();
    (theta, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_rules() {
        let (x, w) = gauss_legendre(2);
        assert_abs_diff_eq!(x[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-15);
        let (x, w) = gauss_legendre(3);
        assert_abs_diff_eq!(x[2], (0.6f64).sqrt(), epsilon = 1e-15);
        assert_eq!(x[1], 0.0);
        assert_abs_diff_eq!(w[1], 8.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn exact_for_monomials() {
        for n in [1usize, 4, 11, 202] {
            let (x, w) = gauss_legendre(n);
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            for deg in (0..2 * n).step_by(7.max(n / 5)) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert_abs_diff_eq!(q, exact, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn theta_order() {
        let (t, w) = theta_nodes(6);
        assert!(t.windows(2).all(|p| p[0] < p[1]));
        assert!(t[0] > 0.0 && t[5] < PI);
        assert_abs_diff_eq!(t[0] + t[5], PI, epsilon = 1e-14);
        assert_abs_diff_eq!(w[0], w[5], epsilon = 1e-15);
    }
}
