//! Half-integer bookkeeping for a spin `J = two_j / 2`.
//!
//! Dicke vectors are stored with index `i = 0..=two_j` mapping to
//! `m = J - i`, so index 0 is the highest-weight state `|J, J>`.

use crate::{Error, Result};
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

/// Total spin stored as `2J`, so `N` spin-1/2 particles give `two_j = N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinQuantum {
    two_j: u32,
}

impl SpinQuantum {
    pub const fn new(two_j: u32) -> Self {
        Self { two_j }
    }

    /// Symmetric subspace of `spins` spin-1/2 particles.
    pub const fn from_spins(spins: u32) -> Self {
        Self { two_j: spins }
    }

    /// Parses a (possibly half-integer) `j`; rejects negative or non-half-integer values.
    pub fn from_j(j: f64) -> Result<Self> {
        let two = 2.0 * j;
        if two.is_nan() || two < 0.0 || two != two.round() || two > u32::MAX as f64 {
            return Err(Error::InvalidArgument("j must be a non-negative half-integer"));
        }
        Ok(Self { two_j: two as u32 })
    }

    pub const fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Basis dimension `2J + 1`.
    pub const fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// `2m` of the basis vector at `index`.
    pub const fn two_m(self, index: usize) -> i64 {
        self.two_j as i64 - 2 * index as i64
    }

    pub fn m(self, index: usize) -> f64 {
        self.two_m(index) as f64 / 2.0
    }

    /// Index of `2m`, or `None` when `|m| > J` or the parity is wrong.
    pub fn index_of(self, two_m: i64) -> Option<usize> {
        let tj = self.two_j as i64;
        if two_m.abs() > tj || (tj - two_m) % 2 != 0 {
            return None;
        }
        Some(((tj - two_m) / 2) as usize)
    }

    pub const fn is_integer(self) -> bool {
        self.two_j.is_multiple_of(2)
    }

    pub fn m_values(self) -> impl Iterator<Item = f64> + Clone {
        (0..self.dim()).map(move |i| self.m(i))
    }
}
