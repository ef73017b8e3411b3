//! Wigner small-d matrices, z-rotations and rotated Dicke frames.
//!
//! `d^j(beta)` is the matrix of `exp(-i beta J_y)` in the Dicke basis ordered
//! `m = J ..= -J`. Column `m` of `d^j(beta)` is the eigenvector of
//! `sin(beta) J_x + cos(beta) J_z` with eigenvalue `m`, and that operator is
//! real symmetric tridiagonal, so each column comes out of
//! [`known_eigenvector`](crate::tridiag::known_eigenvector) in `O(2J+1)`. The
//! sign of each column is fixed by the closed form of the top row,
//! `d^j_{J,m}(beta) = sqrt(C(2J, J+m)) cos^{J+m}(beta/2) (-sin(beta/2))^{J-m}`.
//!
//! The textbook sum formula is kept as [`wigner_d_sum`]. It is exact in
//! principle but its alternating terms cancel catastrophically for large `j`
//! near `beta = pi/2`, so it only serves as an independent check at small `j`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::linalg::CMatrix;
use crate::logfact::LogFactorialTable;
use crate::spin::SpinQuantum;
use crate::tridiag::known_eigenvector;
use crate::{Error, Result};

/// Real `(2J+1) x (2J+1)` matrix `d^j_{m',m}(beta)`, row `m'`, column `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallDMatrix {
    j: SpinQuantum,
    beta: f64,
    entries: Vec<f64>,
}

impl SmallDMatrix {
    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    /// Entry at Dicke indices (row `m'`, column `m`).
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.j.dim() + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.j.dim();
        &self.entries[row * n..(row + 1) * n]
    }

    /// Plain matrix product (used for composition checks).
    pub fn matmul(&self, rhs: &SmallDMatrix) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(n, rhs.dim());
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for jj in 0..n {
                    out[i * n + jj] += a * rhs.get(k, jj);
                }
            }
        }
        out
    }

    /// `|| d^T d - I ||_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for r in 0..n {
                    s += self.get(r, a) * self.get(r, b);
                }
                let want = if a == b { 1.0 } else { 0.0 };
                acc += (s - want) * (s - want);
            }
        }
        acc.sqrt()
    }
}

/// `d^j(beta)` for `0 <= beta <= pi`, accurate to ~1e-14 per entry up to
/// `two_j = 200` and free of overflow/underflow artefacts.
pub fn small_d_matrix(j: SpinQuantum, beta: f64) -> Result<SmallDMatrix> {
    if !(0.0..=PI).contains(&beta) {
        return Err(Error::ThetaOutOfRange(beta));
    }
    let n = j.dim();
    let tj = j.two_j() as usize;
    let mut entries = vec![0.0; n * n];

    if beta == 0.0 {
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        return Ok(SmallDMatrix { j, beta, entries });
    }
    if beta == PI {
        // d^j_{m',m}(pi) = (-1)^{j-m} delta_{m',-m}
        for c in 0..n {
            entries[(tj - c) * n + c] = if c % 2 == 0 { 1.0 } else { -1.0 };
        }
        return Ok(SmallDMatrix { j, beta, entries });
    }

    let sin_beta = beta.sin();
    let half_sin_sq = {
        let s = (0.5 * beta).sin();
        s * s
    };
    let off: Vec<f64> =
        (0..n.saturating_sub(1)).map(|i| 0.5 * sin_beta * (((i + 1) * (tj - i)) as f64).sqrt()).collect();
    let mut diag = vec![0.0; n];
    for c in 0..n {
        let two_m = j.two_m(c);
        // m' cos(beta) - m, written to avoid cancellation when beta is small.
        for (i, d) in diag.iter_mut().enumerate() {
            let two_mp = j.two_m(i);
            *d = (two_mp - two_m) as f64 / 2.0 - two_mp as f64 * half_sin_sq;
        }
        let column = known_eigenvector(&diag, &off, 0, c % 2 == 0);
        for (i, v) in column.into_iter().enumerate() {
            entries[i * n + c] = v;
        }
    }
    Ok(SmallDMatrix { j, beta, entries })
}

/// Single element `d^j_{m',m}(beta)` from the explicit sum formula, summed in
/// the log domain with compensated accumulation. Loses accuracy for large `j`;
/// see the module docs.
pub fn wigner_d_sum(j: SpinQuantum, two_mp: i64, two_m: i64, beta: f64) -> Result<f64> {
    let (Some(_), Some(_)) = (j.index_of(two_mp), j.index_of(two_m)) else {
        return Err(Error::InvalidArgument("m outside [-j, j]"));
    };
    let tj = j.two_j() as i64;
    let table = LogFactorialTable::new(tj as usize);
    let f = |x: i64| table.ln_fact(x as usize);
    let j_plus_m = (tj + two_m) / 2;
    let j_minus_m = (tj - two_m) / 2;
    let j_plus_mp = (tj + two_mp) / 2;
    let j_minus_mp = (tj - two_mp) / 2;
    let delta = (two_mp - two_m) / 2;
    let c = (0.5 * beta).cos();
    let s = (0.5 * beta).sin();
    let log_pre = 0.5 * (f(j_plus_mp) + f(j_minus_mp) + f(j_plus_m) + f(j_minus_m));

    let k_min = 0.max(-delta);
    let k_max = j_plus_m.min(j_minus_mp);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in k_min..=k_max {
        let cos_pow = tj - delta - 2 * k;
        let sin_pow = delta + 2 * k;
        let mut log_mag = log_pre - (f(j_plus_m - k) + f(k) + f(delta + k) + f(j_minus_mp - k));
        let mut zero = false;
        for (base, pow) in [(c, cos_pow), (s, sin_pow)] {
            if pow > 0 {
                if base == 0.0 {
                    zero = true;
                } else {
                    log_mag += pow as f64 * base.abs().ln();
                }
            }
        }
        if zero {
            continue;
        }
        let mut negative = (delta + k).rem_euclid(2) == 1;
        if c < 0.0 && cos_pow % 2 == 1 {
            negative = !negative;
        }
        if s < 0.0 && sin_pow % 2 == 1 {
            negative = !negative;
        }
        let term = if negative { -log_mag.exp() } else { log_mag.exp() };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok(sum + comp)
}

/// Diagonal of `R_z(alpha) = exp(-i alpha J_z)`: `exp(-i alpha m)` for `m = J ..= -J`.
pub fn rz_phases(j: SpinQuantum, alpha: f64) -> Vec<Complex64> {
    (0..j.dim())
        .map(|i| {
            let phase = -alpha * j.m(i);
            Complex64::new(phase.cos(), phase.sin())
        })
        .collect()
}

/// `U(theta, phi) = R_z(phi) d^j(theta)`; column `m` is `|j, m; d>` with
/// `d = (sin theta cos phi, sin theta sin phi, cos theta)`.
pub fn rotated_dicke_frame(j: SpinQuantum, theta: f64, phi: f64) -> Result<CMatrix> {
    let d = small_d_matrix(j, theta)?;
    let phases = rz_phases(j, phi);
    let n = j.dim();
    let mut data = Vec::with_capacity(n * n);
    for (row, p) in phases.iter().enumerate() {
        data.extend(d.row(row).iter().map(|v| p * *v));
    }
    Ok(CMatrix::from_row_major(n, data))
}
