//! Spin coherent states `|theta, phi>` and the walker's site states.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::logfact::LogFactorialTable;
use crate::spin::SpinQuantum;
use crate::{Error, Result};

/// Walker-only state over the Dicke basis, index `i` holding `m = J - i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeVector {
    j: SpinQuantum,
    amplitudes: Vec<Complex64>,
}

impl DickeVector {
    pub fn new(j: SpinQuantum, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != j.dim() {
            return Err(Error::DimensionMismatch { expected: j.dim(), actual: amplitudes.len() });
        }
        Ok(Self { j, amplitudes })
    }

    /// `|J, m>` with `m` given doubled.
    pub fn basis(j: SpinQuantum, two_m: i64) -> Result<Self> {
        let idx = j.index_of(two_m).ok_or(Error::InvalidArgument("m outside [-j, j]"))?;
        let mut amplitudes = alloc::vec![Complex64::new(0.0, 0.0); j.dim()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { j, amplitudes })
    }

    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &DickeVector) -> Complex64 {
        assert_eq!(self.j, other.j, "spin mismatch");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Multiplies component-wise by a diagonal operator.
    pub fn apply_diagonal(&self, diag: &[Complex64]) -> DickeVector {
        assert_eq!(diag.len(), self.amplitudes.len());
        let amplitudes = self.amplitudes.iter().zip(diag).map(|(a, d)| a * d).collect();
        DickeVector { j: self.j, amplitudes }
    }

    /// `(<J_x>, <J_y>, <J_z>)`.
    pub fn spin_expectation(&self) -> [f64; 3] {
        let j = self.j.j();
        let mut raise = Complex64::new(0.0, 0.0);
        let mut jz = 0.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let m = self.j.m(i);
            jz += m * a.norm_sqr();
            if i > 0 {
                // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and m+1 sits at index i-1.
                let c = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
                raise += self.amplitudes[i - 1].conj() * a * c;
            }
        }
        [raise.re, raise.im, jz]
    }
}

/// Equally spaced sites `phi_n = n * 2pi/L` on the parallel at polar angle
/// `theta0`, with `n` kept in the balanced range `(-L/2, L/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteIndexing {
    sites: u32,
    delta_phi: f64,
    theta0: f64,
}

impl SiteIndexing {
    pub fn new(sites: u32, theta0: f64) -> Result<Self> {
        if sites < 2 {
            return Err(Error::InvalidArgument("need at least two sites"));
        }
        if !(0.0..=PI).contains(&theta0) {
            return Err(Error::ThetaOutOfRange(theta0));
        }
        Ok(Self { sites, delta_phi: 2.0 * PI / sites as f64, theta0 })
    }

    /// Sites on the equator.
    pub fn equator(sites: u32) -> Result<Self> {
        Self::new(sites, FRAC_PI_2)
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn delta_phi(&self) -> f64 {
        self.delta_phi
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// Wraps any integer site index into `(-L/2, L/2]`.
    pub fn wrap(&self, n: i64) -> i64 {
        let l = self.sites as i64;
        let r = n.rem_euclid(l);
        if 2 * r > l {
            r - l
        } else {
            r
        }
    }

    /// Azimuth of site `n` after wrapping.
    pub fn phi(&self, n: i64) -> f64 {
        self.wrap(n) as f64 * self.delta_phi
    }

    /// Site indices in ascending balanced order.
    pub fn site_indices(&self) -> core::ops::RangeInclusive<i64> {
        let l = self.sites as i64;
        -((l - 1) / 2)..=l / 2
    }

    /// Position of site `n` within [`site_indices`](Self::site_indices).
    pub fn position(&self, n: i64) -> usize {
        (self.wrap(n) + (self.sites as i64 - 1) / 2) as usize
    }
}

/// Binomial expansion of `|theta, phi>`: the amplitude on `|J, m>` is
/// `sqrt(C(2J, J-m)) cos^{J+m}(theta/2) sin^{J-m}(theta/2) e^{i(J-m)phi}`,
/// assembled in the log domain.
pub fn coherent_state(j: SpinQuantum, theta: f64, phi: f64) -> Result<DickeVector> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    let two_j = j.two_j() as usize;
    let table = LogFactorialTable::new(two_j);
    let c = (0.5 * theta).cos();
    let s = (0.5 * theta).sin();
    let (ln_c, ln_s) = (c.ln(), s.ln());

    let amplitudes = (0..=two_j)
        .map(|k| {
            let cos_pow = two_j - k;
            if (cos_pow > 0 && c <= 0.0) || (k > 0 && s <= 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            let mut log_mag = 0.5 * table.ln_binomial(two_j, k);
            if cos_pow > 0 {
                log_mag += cos_pow as f64 * ln_c;
            }
            if k > 0 {
                log_mag += k as f64 * ln_s;
            }
            let phase = k as f64 * phi;
            Complex64::from_polar(log_mag.exp(), phase)
        })
        .collect();
    Ok(DickeVector { j, amplitudes })
}

/// `|phi_n> = |theta0, n * delta_phi>` with `n` wrapped into the balanced range.
pub fn site_state(indexing: &SiteIndexing, j: SpinQuantum, n: i64) -> DickeVector {
    coherent_state(j, indexing.theta0(), indexing.phi(n)).expect("theta0 validated by SiteIndexing")
}

/// `|<theta1, phi1|theta2, phi2>| = cos^{2J}(Theta/2)`, where `Theta` is the
/// angle between the two directions.
pub fn overlap_modulus(theta1: f64, phi1: f64, theta2: f64, phi2: f64, j: SpinQuantum) -> f64 {
    let cos_big = theta1.cos() * theta2.cos() + theta1.sin() * theta2.sin() * (phi1 - phi2).cos();
    let half_cos_sq = (0.5 * (1.0 + cos_big)).clamp(0.0, 1.0);
    half_cos_sq.powf(j.j())
}

/// `|<phi_m|phi_n>| = [(cos((m-n) delta_phi) + 1) / 2]^J` for sites on the equator.
pub fn overlap_equator(m: i64, n: i64, indexing: &SiteIndexing, j: SpinQuantum) -> Result<f64> {
    if (indexing.theta0() - FRAC_PI_2).abs() > 1e-12 {
        return Err(Error::NotEquator(indexing.theta0()));
    }
    let angle = (m - n) as f64 * indexing.delta_phi();
    let base = (0.5 * (angle.cos() + 1.0)).clamp(0.0, 1.0);
    Ok(base.powf(j.j()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn north_pole_is_highest_weight() {
        for phi in [0.0, 1.3, -2.0] {
            let v = coherent_state(SpinQuantum::new(7), 0.0, phi).unwrap();
            assert_eq!(v.amplitudes()[0], Complex64::new(1.0, 0.0));
            assert!(v.amplitudes()[1..].iter().all(|a| *a == Complex64::new(0.0, 0.0)));
        }
    }

    #[test]
    fn south_pole_is_lowest_weight() {
        let v = coherent_state(SpinQuantum::new(6), PI, 0.4).unwrap();
        assert_abs_diff_eq!(v.amplitudes()[6].norm(), 1.0, epsilon = 1e-15);
        assert!(v.amplitudes()[..6].iter().all(|a| a.norm() < 1e-15));
    }

    #[test]
    fn equator_top_amplitude() {
        let v = coherent_state(SpinQuantum::new(50), FRAC_PI_2, 0.0).unwrap();
        let top = v.amplitudes()[0];
        assert_abs_diff_eq!(top.im, 0.0);
        assert_abs_diff_eq!(top.re, 0.5f64.powi(25), epsilon = 1e-20);
        assert!((top.re - 2.98e-8).abs() < 0.01e-8);
    }

    #[test]
    fn rejects_theta_out_of_range() {
        assert!(matches!(coherent_state(SpinQuantum::new(2), -0.01, 0.0), Err(Error::ThetaOutOfRange(_))));
        assert!(coherent_state(SpinQuantum::new(2), 3.2, 0.0).is_err());
    }

    #[test]
    fn expectation_points_along_bloch_vector() {
        for two_j in [1u32, 2, 9, 50, 200] {
            let j = SpinQuantum::new(two_j);
            for &(theta, phi) in &[(0.3, 0.2), (FRAC_PI_2, -1.0), (2.8, 2.9), (1.0, 0.0)] {
                let e = coherent_state(j, theta, phi).unwrap().spin_expectation();
                let jj = j.j();
                assert_abs_diff_eq!(e[0] / jj, theta.sin() * phi.cos(), epsilon = 1e-10);
                assert_abs_diff_eq!(e[1] / jj, theta.sin() * phi.sin(), epsilon = 1e-10);
                assert_abs_diff_eq!(e[2] / jj, theta.cos(), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn unit_norm_near_poles_at_large_j() {
        let j = SpinQuantum::new(200);
        for theta in [0.0, 1e-6, 1e-3, 0.5, FRAC_PI_2, PI - 1e-3, PI - 1e-6, PI] {
            let v = coherent_state(j, theta, 0.3).unwrap();
            assert_abs_diff_eq!(v.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn site_wrapping() {
        let six = SiteIndexing::equator(6).unwrap();
        assert_eq!(six.site_indices().collect::<Vec<_>>(), [-2, -1, 0, 1, 2, 3]);
        assert_eq!(six.wrap(4), -2);
        assert_eq!(six.wrap(-3), 3);
        assert_eq!(six.wrap(6), 0);
        let five = SiteIndexing::equator(5).unwrap();
        assert_eq!(five.site_indices().collect::<Vec<_>>(), [-2, -1, 0, 1, 2]);
        assert_eq!(five.wrap(3), -2);
        assert_abs_diff_eq!(six.delta_phi() * 6.0, 2.0 * PI, epsilon = 1e-12);
        assert!(SiteIndexing::equator(1).is_err());
    }

    #[test]
    fn site_states() {
        let idx = SiteIndexing::equator(6).unwrap();
        let j = SpinQuantum::new(50);
        assert_eq!(site_state(&idx, j, 0), coherent_state(j, FRAC_PI_2, 0.0).unwrap());
        assert_eq!(site_state(&idx, j, 6), site_state(&idx, j, 0));
        assert_eq!(site_state(&idx, j, -1), coherent_state(j, FRAC_PI_2, -PI / 3.0).unwrap());
    }

    #[test]
    fn overlap_special_values() {
        let j = SpinQuantum::new(50);
        assert_abs_diff_eq!(overlap_modulus(0.4, 1.0, 0.4, 1.0, j), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap_modulus(0.4, 1.0, PI - 0.4, 1.0 + PI, j), 0.0, epsilon = 1e-15);
        let v = overlap_modulus(FRAC_PI_2, PI / 3.0, FRAC_PI_2, 0.0, j);
        assert_abs_diff_eq!(v, 0.75f64.powi(25), epsilon = 1e-16);
        assert!((v - 7.525e-4).abs() < 0.001e-4);
    }

    #[test]
    fn equator_overlap_values() {
        let idx = SiteIndexing::equator(40).unwrap();
        let j = SpinQuantum::new(200);
        assert_eq!(overlap_equator(3, 3, &idx, j).unwrap(), 1.0);
        let v = overlap_equator(1, 0, &idx, j).unwrap();
        assert_abs_diff_eq!(v, (0.5 * ((PI / 20.0).cos() + 1.0)).powi(100), epsilon = 1e-15);
        assert_abs_diff_eq!(v, 0.539_298_804_195_116_3, epsilon = 1e-12);
        assert_abs_diff_eq!(overlap_equator(20, 0, &idx, j).unwrap(), 0.0, epsilon = 1e-15);
        let off = SiteIndexing::new(40, 1.0).unwrap();
        assert!(matches!(overlap_equator(1, 0, &off, j), Err(Error::NotEquator(_))));
    }
}
