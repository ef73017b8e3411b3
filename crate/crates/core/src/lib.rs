//! Numerics for a discrete-time quantum walk whose walker is a collective spin
//! moving along a parallel of the Bloch sphere.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure function
//! of its inputs; IO, parallel grid evaluation and the command line live in the
//! `blochwalk` crate.
//!
//! Layout:
//!
//! * [`spin`], [`logfact`], [`tridiag`], [`cg`], [`dmatrix`]: SU(2) special
//!   functions that stay accurate up to `two_j = 200`.
//! * [`coherent`]: spin coherent states and their overlaps.
//! * [`walk`], [`ideal`]: coin/walker evolution and the orthogonal-site reference
//!   walk.
//! * [`wigner`], [`marginal`]: the Stratonovich–Weyl Wigner function on a
//!   Gauss–Legendre × uniform grid, its azimuthal marginal and moments.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cg;
pub mod coherent;
pub mod dmatrix;
mod error;
pub mod ideal;
pub mod linalg;
pub mod logfact;
pub mod marginal;
pub mod quadrature;
pub mod spin;
pub mod stats;
pub mod tridiag;
pub mod walk;
pub mod wigner;

pub use error::Error;

pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub use cg::{cg_coefficient, cg_diagonal_column};
pub use coherent::{coherent_state, overlap_equator, overlap_modulus, site_state, DickeVector, SiteIndexing};
pub use dmatrix::{rotated_dicke_frame, rz_phases, small_d_matrix, SmallDMatrix};
pub use ideal::{ideal_sigma, ideal_walk, IdealWalk};
pub use linalg::CMatrix;
pub use marginal::{marginal_phi, sigma_from_marginal, PhiDistribution};
pub use spin::SpinQuantum;
pub use walk::{
    coin_unitary, conditional_shift, evolve, reduce_walker, step, CoinPulse, CoinWalkerState, DensityMatrix,
    WalkSchedule,
};
pub use wigner::{
    default_n_phi, default_n_theta, kernel_weights, wigner_at, wigner_grid, GridPlan, KernelWeights, PhiGrid, ThetaSlice,
    WignerGrid, WignerInput,
};
