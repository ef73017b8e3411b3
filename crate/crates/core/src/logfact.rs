//! Table of `ln(n!)`.

use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

#[derive(Debug, Clone)]
pub struct LogFactorialTable {
    values: Vec<f64>,
}

impl LogFactorialTable {
    /// Builds `ln(0!) ..= ln(n_max!)` by cumulative summation of `ln(k)`.
    pub fn new(n_max: usize) -> Self {
        let mut values = Vec::with_capacity(n_max + 1);
        values.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=n_max {
            acc += (k as f64).ln();
            values.push(acc);
        }
        Self { values }
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `ln(n!)`. Panics if `n` is beyond the table.
    #[inline]
    pub fn ln_fact(&self, n: usize) -> f64 {
        self.values[n]
    }

    /// `ln C(n, k)`.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n);
        self.values[n] - self.values[k] - self.values[n - k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
