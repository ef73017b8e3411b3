//! One period of the pulsed coin/walker evolution, `U(T) = M C`.
//!
//! The composite state is stored as two walker vectors, one per coin basis
//! state. The coin flip `C = I_w (x) exp(-i h.S)` mixes the two branches with
//! a 2x2 unitary, and the conditional shift
//! `M = R_z(kT) (x) |up><up| + R_z(-kT) (x) |down><down|` multiplies each branch
//! by a diagonal phase. A step is therefore `O(2J+1)`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::coherent::{DickeVector, SiteIndexing};
use crate::dmatrix::rz_phases;
use crate::linalg::CMatrix;
use crate::spin::SpinQuantum;
use crate::{Error, Result};

pub type CoinMatrix = [[Complex64; 2]; 2];

/// Pulse vector `h` applied to the coin spin once per period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinPulse {
    pub h: [f64; 3],
}

impl CoinPulse {
    pub const fn new(h: [f64; 3]) -> Self {
        Self { h }
    }

    /// `h = (pi, 0, pi) / sqrt(2)`, which realizes `-i H_c` (Hadamard up to a
    /// global phase).
    pub fn hadamard() -> Self {
        Self { h: [PI * FRAC_1_SQRT_2, 0.0, PI * FRAC_1_SQRT_2] }
    }

    pub fn magnitude(&self) -> f64 {
        self.h.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// `exp(-i h.sigma/2) = cos(h/2) I - i sin(h/2) (h_hat . sigma)`, coin basis
/// ordered `(up, down)`.
pub fn coin_unitary(pulse: &CoinPulse) -> CoinMatrix {
    let h = pulse.magnitude();
    let zero = Complex64::new(0.0, 0.0);
    if h == 0.0 {
        let one = Complex64::new(1.0, 0.0);
        return [[one, zero], [zero, one]];
    }
    let [nx, ny, nz] = pulse.h.map(|v| v / h);
    let c = (0.5 * h).cos();
    let s = (0.5 * h).sin();
    // -i s (nx sx + ny sy + nz sz)
    [
        [Complex64::new(c, -s * nz), Complex64::new(-s * ny, -s * nx)],
        [Complex64::new(s * ny, -s * nx), Complex64::new(c, s * nz)],
    ]
}

pub fn coin_product(a: &CoinMatrix, b: &CoinMatrix) -> CoinMatrix {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Pure state of coin (x) walker as the two walker branches paired with
/// `|up>` and `|down>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinWalkerState {
    j: SpinQuantum,
    up: Vec<Complex64>,
    down: Vec<Complex64>,
}

impl CoinWalkerState {
    pub fn from_branches(j: SpinQuantum, up: Vec<Complex64>, down: Vec<Complex64>) -> Result<Self> {
        for len in [up.len(), down.len()] {
            if len != j.dim() {
                return Err(Error::DimensionMismatch { expected: j.dim(), actual: len });
            }
        }
        Ok(Self { j, up, down })
    }

    /// `|w> (x) (a |up> + b |down>)`.
    pub fn product(walker: &DickeVector, coin: [Complex64; 2]) -> Self {
        let amps = walker.amplitudes();
        Self {
            j: walker.spin(),
            up: amps.iter().map(|a| a * coin[0]).collect(),
            down: amps.iter().map(|a| a * coin[1]).collect(),
        }
    }

    /// `|w> (x) |up>`.
    pub fn coin_up(walker: &DickeVector) -> Self {
        Self::product(walker, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
    }

    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn up(&self) -> &[Complex64] {
        &self.up
    }

    pub fn down(&self) -> &[Complex64] {
        &self.down
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.iter().chain(&self.down).map(|a| a.norm_sqr()).sum()
    }

    pub fn branch_weights(&self) -> (f64, f64) {
        (self.up.iter().map(|a| a.norm_sqr()).sum(), self.down.iter().map(|a| a.norm_sqr()).sum())
    }

    fn apply_coin(&self, u: &CoinMatrix) -> Self {
        let (up, down) = self
            .up
            .iter()
            .zip(&self.down)
            .map(|(a, b)| (u[0][0] * a + u[0][1] * b, u[1][0] * a + u[1][1] * b))
            .unzip();
        Self { j: self.j, up, down }
    }
}

/// Per-period shift angle and number of periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkSchedule {
    pub kappa_t: f64,
    pub steps: usize,
    pub indexing: SiteIndexing,
}

impl WalkSchedule {
    /// `kappa T = 2 pi / L`, so each period moves the walker by exactly one site.
    pub fn site_aligned(indexing: SiteIndexing, steps: usize) -> Self {
        Self { kappa_t: indexing.delta_phi(), steps, indexing }
    }
}

/// Applies `M`: up branch times `exp(-i kT m)`, down branch times `exp(+i kT m)`.
pub fn conditional_shift(state: &CoinWalkerState, schedule: &WalkSchedule) -> CoinWalkerState {
    let forward = rz_phases(state.j, schedule.kappa_t);
    CoinWalkerState {
        j: state.j,
        up: state.up.iter().zip(&forward).map(|(a, p)| a * p).collect(),
        // exp(+i kT m) is the conjugate of exp(-i kT m)
        down: state.down.iter().zip(&forward).map(|(a, p)| a * p.conj()).collect(),
    }
}

/// One period: coin flip first, then the conditional shift.
pub fn step(state: &CoinWalkerState, pulse: &CoinPulse, schedule: &WalkSchedule) -> CoinWalkerState {
    conditional_shift(&state.apply_coin(&coin_unitary(pulse)), schedule)
}

/// `[psi(0), psi(1), ..., psi(k)]` with `k = schedule.steps`.
pub fn evolve(initial: &CoinWalkerState, pulse: &CoinPulse, schedule: &WalkSchedule) -> Vec<CoinWalkerState> {
    let coin = coin_unitary(pulse);
    let forward = rz_phases(initial.j, schedule.kappa_t);
    let mut out = Vec::with_capacity(schedule.steps + 1);
    out.push(initial.clone());
    for _ in 0..schedule.steps {
        let mut next = out.last().expect("non-empty").apply_coin(&coin);
        for ((u, d), p) in next.up.iter_mut().zip(next.down.iter_mut()).zip(&forward) {
            *u *= p;
            *d *= p.conj();
        }
        out.push(next);
    }
    out
}

/// Hermitian, positive semidefinite, unit-trace operator on the walker.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    j: SpinQuantum,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity (1e-12) and trace (1e-10).
    pub fn new(j: SpinQuantum, matrix: CMatrix) -> Result<Self> {
        if matrix.dim() != j.dim() {
            return Err(Error::DimensionMismatch { expected: j.dim(), actual: matrix.dim() });
        }
        if matrix.hermiticity_defect() > 1e-12 {
            return Err(Error::InvalidArgument("density matrix is not Hermitian"));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::Unnormalized { total: tr.re, tolerance: 1e-10 });
        }
        Ok(Self { j, matrix })
    }

    pub fn pure(state: &DickeVector) -> Self {
        Self { j: state.spin(), matrix: CMatrix::outer(state.amplitudes(), state.amplitudes()) }
    }

    /// `I / (2J+1)`.
    pub fn maximally_mixed(j: SpinQuantum) -> Self {
        let mut matrix = CMatrix::identity(j.dim());
        matrix.scale(Complex64::new(1.0 / j.dim() as f64, 0.0));
        Self { j, matrix }
    }

    /// `sum_i w_i |v_i><v_i|`, without normalization checks.
    pub fn mixture(j: SpinQuantum, terms: &[(f64, &[Complex64])]) -> Self {
        let mut matrix = CMatrix::zeros(j.dim());
        for (w, v) in terms {
            let mut part = CMatrix::outer(v, v);
            part.scale(Complex64::new(*w, 0.0));
            matrix.add_assign(&part);
        }
        Self { j, matrix }
    }

    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // For Hermitian rho, tr(rho^2) = sum |rho_ij|^2.
        self.matrix.as_slice().iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        self.matrix.frobenius_distance(&other.matrix)
    }

    /// `R rho R^dagger` for a diagonal `R`.
    pub fn conjugate_diagonal(&self, diag: &[Complex64]) -> DensityMatrix {
        let n = self.j.dim();
        let mut matrix = self.matrix.clone();
        for i in 0..n {
            for k in 0..n {
                matrix[(i, k)] = diag[i] * self.matrix[(i, k)] * diag[k].conj();
            }
        }
        DensityMatrix { j: self.j, matrix }
    }
}

/// `tr_c |psi><psi| = |up><up| + |down><down|`.
pub fn reduce_walker(state: &CoinWalkerState) -> DensityMatrix {
    let mut matrix = CMatrix::outer(&state.up, &state.up);
    matrix.add_assign(&CMatrix::outer(&state.down, &state.down));
    DensityMatrix { j: state.j, matrix }
}
