//! Stratonovich–Weyl Wigner function of the walker.
//!
//! With `U = R_z(phi) d^j(theta)` the kernel is `U diag(Delta) U^dagger`, so
//!
//! `W(theta, phi) = sum_{a,b} rho_ab K_ab(theta) e^{i (b - a) phi}`,
//! `K(theta) = d^j(theta) diag(Delta) d^j(theta)^T`.
//!
//! `K` is real symmetric and independent of `phi` and of the state. A
//! [`ThetaSlice`] stores it once per polar node; every state and every azimuth
//! then costs one pass over the diagonals of `rho` plus a short Fourier sum
//! `W = c_0 + 2 Re sum_{q>0} c_q e^{i q phi}` with `c_q = sum_a rho_{a,a+q} K_{a,a+q}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::cg::cg_diagonal_column;
use crate::dmatrix::{rotated_dicke_frame, small_d_matrix};
use crate::quadrature::theta_nodes;
use crate::spin::SpinQuantum;
use crate::walk::{CoinWalkerState, DensityMatrix};
use crate::{Error, Result};

/// Eigenvalues `Delta_{j,m}` of the kernel, Dicke order `m = J ..= -J`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWeights {
    j: SpinQuantum,
    delta: Vec<f64>,
}

impl KernelWeights {
    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    /// `Delta_{j,m}` for `2m`; `None` off the ladder.
    pub fn get(&self, two_m: i64) -> Option<f64> {
        self.j.index_of(two_m).map(|i| self.delta[i])
    }
}

/// `Delta_{j,m} = sum_{l=0}^{2j} (2l+1)/(2j+1) <j m; l 0|j m>`.
pub fn kernel_weights(j: SpinQuantum) -> KernelWeights {
    let n = j.dim();
    let mut delta = vec![0.0; n];
    // the l = 2j columns are the smallest terms; summing from high l down keeps
    // the large l = 0 contribution for last
    for l in (0..=j.two_j()).rev() {
        let column = cg_diagonal_column(j, l).expect("l <= 2j");
        let factor = (2 * l + 1) as f64 / n as f64;
        for (d, c) in delta.iter_mut().zip(&column) {
            *d += factor * c;
        }
    }
    KernelWeights { j, delta }
}

fn check_spin(rho: SpinQuantum, weights: &KernelWeights) -> Result<()> {
    if rho != weights.j {
        return Err(Error::DimensionMismatch { expected: weights.j.dim(), actual: rho.dim() });
    }
    Ok(())
}

/// `tr(rho Delta(theta, phi))` evaluated directly from the rotated Dicke frame.
/// Slow (`O((2J+1)^3)` per point) but independent of the grid machinery.
pub fn wigner_at(rho: &DensityMatrix, theta: f64, phi: f64, weights: &KernelWeights) -> Result<f64> {
    check_spin(rho.spin(), weights)?;
    let frame = rotated_dicke_frame(rho.spin(), theta, phi)?;
    let n = rho.spin().dim();
    let mut total = Complex64::new(0.0, 0.0);
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for (m, delta) in weights.delta.iter().enumerate() {
        for (a, c) in column.iter_mut().enumerate() {
            *c = frame[(a, m)];
        }
        let rho_v = rho.matrix().mul_vec(&column);
        let expectation: Complex64 = column.iter().zip(&rho_v).map(|(v, r)| v.conj() * r).sum();
        total += expectation * *delta;
    }
    if total.im.abs() > 1e-8 {
        return Err(Error::ImaginaryResidue(total.im));
    }
    Ok(total.re)
}

/// Uniform azimuths `phi_j = -pi + j * 2 pi / n`, `j = 0..n`, with a table of
/// `exp(2 pi i j / n)` for the Fourier sums.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiGrid {
    nodes: Vec<f64>,
    roots: Vec<Complex64>,
}

impl PhiGrid {
    pub fn new(n_phi: usize) -> Result<Self> {
        if n_phi == 0 {
            return Err(Error::InvalidArgument("n_phi must be positive"));
        }
        let step = 2.0 * PI / n_phi as f64;
        let nodes = (0..n_phi).map(|j| -PI + j as f64 * step).collect();
        let roots = (0..n_phi).map(|j| Complex64::from_polar(1.0, j as f64 * step)).collect();
        Ok(Self { nodes, roots })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.nodes.len() as f64
    }

    /// `exp(i q phi_j)` from the table (exact periodicity, no drift in `q`).
    #[inline]
    pub fn phase(&self, q: usize, j: usize) -> Complex64 {
        let n = self.nodes.len();
        let w = self.roots[(q % n) * j % n];
        // phi_j = -pi + ..., so exp(i q phi_j) picks up (-1)^q
        if q.is_multiple_of(2) {
            w
        } else {
            -w
        }
    }
}

/// Everything about one polar node that does not depend on the state.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSlice {
    theta: f64,
    weight: f64,
    dim: usize,
    /// Row-major symmetric `K(theta)`.
    kernel: Vec<f64>,
}

impl ThetaSlice {
    pub fn new(theta: f64, weight: f64, weights: &KernelWeights) -> Result<Self> {
        let d = small_d_matrix(weights.j, theta)?;
        let n = weights.j.dim();
        let mut kernel = vec![0.0; n * n];
        let mut scaled = vec![0.0; n];
        for a in 0..n {
            let row_a = d.row(a);
            for ((s, x), w) in scaled.iter_mut().zip(row_a).zip(&weights.delta) {
                *s = x * w;
            }
            for b in a..n {
                let v: f64 = scaled.iter().zip(d.row(b)).map(|(x, y)| x * y).sum();
                kernel[a * n + b] = v;
                kernel[b * n + a] = v;
            }
        }
        Ok(Self { theta, weight, dim: n, kernel })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Gauss–Legendre weight in `cos(theta)`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn kernel(&self, a: usize, b: usize) -> f64 {
        self.kernel[a * self.dim + b]
    }

    /// `c_q` for `q = 0..2J` from a density matrix.
    pub fn coefficients(&self, rho: &DensityMatrix) -> Vec<Complex64> {
        assert_eq!(rho.spin().dim(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|q| (0..n - q).map(|a| rho.get(a, a + q) * self.kernel[a * n + a + q]).sum())
            .collect()
    }

    /// `c_q` for the reduced walker of a pure coin-walker state, without forming rho:
    /// `rho_{a,b} = u_a conj(u_b) + v_a conj(v_b)`.
    pub fn coefficients_pure(&self, state: &CoinWalkerState) -> Vec<Complex64> {
        assert_eq!(state.spin().dim(), self.dim);
        let n = self.dim;
        let (up, down) = (state.up(), state.down());
        (0..n)
            .map(|q| {
                (0..n - q)
                    .map(|a| {
                        let r = up[a] * up[a + q].conj() + down[a] * down[a + q].conj();
                        r * self.kernel[a * n + a + q]
                    })
                    .sum()
            })
            .collect()
    }

    /// Fills `out[j] = W(theta, phi_j)`.
    pub fn evaluate_row(coefficients: &[Complex64], phi: &PhiGrid, out: &mut [f64]) {
        assert_eq!(out.len(), phi.len());
        for (j, w) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (q, c) in coefficients.iter().enumerate().skip(1) {
                let p = phi.phase(q, j);
                acc += c.re * p.re - c.im * p.im;
            }
            *w = coefficients[0].re + 2.0 * acc;
        }
    }
}

/// State-independent precomputation for a whole `n_theta x n_phi` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPlan {
    j: SpinQuantum,
    phi: PhiGrid,
    slices: Vec<ThetaSlice>,
}

impl GridPlan {
    pub fn new(weights: &KernelWeights, n_theta: usize, n_phi: usize) -> Result<Self> {
        let (theta, w) = theta_nodes(n_theta);
        let slices = theta
            .iter()
            .zip(&w)
            .map(|(t, w)| ThetaSlice::new(*t, *w, weights))
            .collect::<Result<Vec<_>>>()?;
        Self::from_slices(weights.j, slices, PhiGrid::new(n_phi)?)
    }

    /// Assembles a plan from slices built elsewhere (e.g. in parallel).
    pub fn from_slices(j: SpinQuantum, slices: Vec<ThetaSlice>, phi: PhiGrid) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::InvalidArgument("n_theta must be positive"));
        }
        if let Some(s) = slices.iter().find(|s| s.dim != j.dim()) {
            return Err(Error::DimensionMismatch { expected: j.dim(), actual: s.dim });
        }
        Ok(Self { j, phi, slices })
    }

    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn phi(&self) -> &PhiGrid {
        &self.phi
    }

    pub fn slices(&self) -> &[ThetaSlice] {
        &self.slices
    }

    /// Sequential evaluation; the values are row-major, one row per slice.
    pub fn evaluate(&self, input: WignerInput<'_>) -> Result<WignerGrid> {
        if input.spin() != self.j {
            return Err(Error::DimensionMismatch { expected: self.j.dim(), actual: input.spin().dim() });
        }
        let n_phi = self.phi.len();
        let mut values = vec![0.0; self.slices.len() * n_phi];
        for (slice, row) in self.slices.iter().zip(values.chunks_mut(n_phi)) {
            let c = input.coefficients(slice);
            ThetaSlice::evaluate_row(&c, &self.phi, row);
        }
        Ok(self.assemble(values))
    }

    /// Wraps row-major values computed against this plan.
    pub fn assemble(&self, values: Vec<f64>) -> WignerGrid {
        assert_eq!(values.len(), self.slices.len() * self.phi.len());
        WignerGrid {
            j: self.j,
            theta: self.slices.iter().map(|s| s.theta).collect(),
            theta_weights: self.slices.iter().map(|s| s.weight).collect(),
            phi: self.phi.nodes.clone(),
            values,
        }
    }
}

/// What a Wigner function can be taken of.
#[derive(Debug, Clone, Copy)]
pub enum WignerInput<'a> {
    Density(&'a DensityMatrix),
    /// Reduced walker of a pure coin-walker state.
    Pure(&'a CoinWalkerState),
}

impl WignerInput<'_> {
    pub fn spin(&self) -> SpinQuantum {
        match self {
            WignerInput::Density(r) => r.spin(),
            WignerInput::Pure(s) => s.spin(),
        }
    }

    pub fn coefficients(&self, slice: &ThetaSlice) -> Vec<Complex64> {
        match self {
            WignerInput::Density(r) => slice.coefficients(r),
            WignerInput::Pure(s) => slice.coefficients_pure(s),
        }
    }
}

impl<'a> From<&'a DensityMatrix> for WignerInput<'a> {
    fn from(r: &'a DensityMatrix) -> Self {
        WignerInput::Density(r)
    }
}

impl<'a> From<&'a CoinWalkerState> for WignerInput<'a> {
    fn from(s: &'a CoinWalkerState) -> Self {
        WignerInput::Pure(s)
    }
}

/// `W(theta_i, phi_j)` on Gauss–Legendre polar nodes times uniform azimuths.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    j: SpinQuantum,
    theta: Vec<f64>,
    theta_weights: Vec<f64>,
    phi: Vec<f64>,
    values: Vec<f64>,
}

impl WignerGrid {
    pub fn spin(&self) -> SpinQuantum {
        self.j
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi.len()
    }

    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta
    }

    pub fn theta_weights(&self) -> &[f64] {
        &self.theta_weights
    }

    pub fn phi_nodes(&self) -> &[f64] {
        &self.phi
    }

    pub fn delta_phi(&self) -> f64 {
        2.0 * PI / self.phi.len() as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.phi.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.phi.len()..(i + 1) * self.phi.len()]
    }

    /// `(2J+1)/(4 pi) sum_ij w_i dphi W_ij`; 1 for a valid state.
    pub fn normalization(&self) -> f64 {
        let pref = self.j.dim() as f64 / (4.0 * PI) * self.delta_phi();
        let total: f64 = self.theta_weights.iter().enumerate().map(|(i, w)| w * self.row(i).iter().sum::<f64>()).sum();
        pref * total
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Location `(theta, phi)` of the largest value.
    pub fn argmax(&self) -> (f64, f64) {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = k;
            }
        }
        (self.theta[best / self.phi.len()], self.phi[best % self.phi.len()])
    }
}

/// Convenience wrapper: plan plus sequential evaluation. Logs a warning when the
/// discretized normalization misses 1 by more than `1e-4`.
pub fn wigner_grid<'a>(
    input: impl Into<WignerInput<'a>>,
    resolution: (usize, usize),
    weights: &KernelWeights,
) -> Result<WignerGrid> {
    let input = input.into();
    check_spin(input.spin(), weights)?;
    let plan = GridPlan::new(weights, resolution.0, resolution.1)?;
    let grid = plan.evaluate(input)?;
    let norm = grid.normalization();
    if (norm - 1.0).abs() > 1e-4 {
        log::warn!("Wigner grid normalization {norm:.6} misses 1; grid resolution too low");
    }
    Ok(grid)
}

/// Polar nodes matching the quadrature exactness for spin `j`.
pub fn default_n_theta(j: SpinQuantum) -> usize {
    j.two_j() as usize + 2
}

/// Smallest multiple of `8 L` above `2J`, so azimuthal harmonics up to `2J` are
/// integrated exactly and every site centre is a node.
pub fn default_n_phi(j: SpinQuantum, sites: u32) -> usize {
    let base = 8 * sites as usize;
    (j.two_j() as usize / base + 1) * base
}
