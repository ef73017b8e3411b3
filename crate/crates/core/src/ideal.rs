//! Reference walk on a cycle of `L` exactly orthogonal sites.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::coherent::SiteIndexing;
use crate::walk::CoinMatrix;
use crate::{Error, Result};

/// Per-step site probabilities, each row ordered like
/// [`SiteIndexing::site_indices`].
#[derive(Debug, Clone, PartialEq)]
pub struct IdealWalk {
    pub indexing: SiteIndexing,
    pub probabilities: Vec<Vec<f64>>,
}

impl IdealWalk {
    pub fn step_probabilities(&self, k: usize) -> &[f64] {
        &self.probabilities[k]
    }

    /// Probability of site `n` (any integer, wrapped) after `k` steps.
    pub fn probability(&self, k: usize, n: i64) -> f64 {
        self.probabilities[k][self.indexing.position(n)]
    }
}

/// Exact unitary walk: apply `coin`, then move up-coin amplitude to `n + 1`
/// and down-coin amplitude to `n - 1` (mod `L`). Starts at site 0 with coin up.
pub fn ideal_walk(indexing: &SiteIndexing, steps: usize, coin: &CoinMatrix) -> IdealWalk {
    let l = indexing.sites() as usize;
    let zero = Complex64::new(0.0, 0.0);
    // amplitudes indexed by position in the balanced ordering
    let mut up = vec![zero; l];
    let mut down = vec![zero; l];
    up[indexing.position(0)] = Complex64::new(1.0, 0.0);

    let probs = |up: &[Complex64], down: &[Complex64]| -> Vec<f64> {
        up.iter().zip(down).map(|(a, b)| a.norm_sqr() + b.norm_sqr()).collect()
    };

    let mut probabilities = Vec::with_capacity(steps + 1);
    probabilities.push(probs(&up, &down));
    for _ in 0..steps {
        let mut next_up = vec![zero; l];
        let mut next_down = vec![zero; l];
        for p in 0..l {
            let a = coin[0][0] * up[p] + coin[0][1] * down[p];
            let b = coin[1][0] * up[p] + coin[1][1] * down[p];
            next_up[(p + 1) % l] += a;
            next_down[(p + l - 1) % l] += b;
        }
        up = next_up;
        down = next_down;
        probabilities.push(probs(&up, &down));
    }
    IdealWalk { indexing: *indexing, probabilities }
}

/// `sqrt(<phi^2> - <phi>^2)` with `phi_n = n delta_phi`, `n` in the balanced
/// range (no wrap-around correction).
pub fn ideal_sigma(probabilities: &[f64], indexing: &SiteIndexing) -> Result<f64> {
    if probabilities.len() != indexing.sites() as usize {
        return Err(Error::DimensionMismatch { expected: indexing.sites() as usize, actual: probabilities.len() });
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Unnormalized { total, tolerance: 1e-9 });
    }
    let (mut m1, mut m2) = (0.0, 0.0);
    for (p, n) in probabilities.iter().zip(indexing.site_indices()) {
        let phi = n as f64 * indexing.delta_phi();
        m1 += p * phi;
        m2 += p * phi * phi;
    }
    Ok((m2 - m1 * m1).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{coin_unitary, CoinPulse};
    use approx::assert_abs_diff_eq;

    #[test]
    fn starts_localized() {
        let idx = SiteIndexing::equator(6).unwrap();
        let w = ideal_walk(&idx, 0, &coin_unitary(&CoinPulse::hadamard()));
        assert_eq!(w.probability(0, 0), 1.0);
        assert_eq!(w.probabilities[0].iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn hadamard_step_two() {
        for l in [6u32, 7, 12, 40] {
            let idx = SiteIndexing::equator(l).unwrap();
            let w = ideal_walk(&idx, 2, &coin_unitary(&CoinPulse::hadamard()));
            assert_abs_diff_eq!(w.probability(2, 2), 0.25, epsilon = 1e-12);
            assert_abs_diff_eq!(w.probability(2, 0), 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(w.probability(2, -2), 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn parity_and_normalization() {
        let idx = SiteIndexing::equator(40).unwrap();
        let w = ideal_walk(&idx, 19, &coin_unitary(&CoinPulse::hadamard()));
        for (k, row) in w.probabilities.iter().enumerate() {
            assert_abs_diff_eq!(row.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            for (p, n) in row.iter().zip(idx.site_indices()) {
                if (n - k as i64).rem_euclid(2) == 1 {
                    assert_eq!(*p, 0.0, "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let idx = SiteIndexing::equator(6).unwrap();
        let mut point = vec![0.0; 6];
        point[idx.position(1)] = 1.0;
        assert_abs_diff_eq!(ideal_sigma(&point, &idx).unwrap(), 0.0, epsilon = 1e-15);

        let w = ideal_walk(&idx, 2, &coin_unitary(&CoinPulse::hadamard()));
        let s = ideal_sigma(w.step_probabilities(2), &idx).unwrap();
        assert_abs_diff_eq!(s, 2f64.sqrt() * idx.delta_phi(), epsilon = 1e-12);

        assert!(matches!(ideal_sigma(&[0.5; 6], &idx), Err(Error::Unnormalized { .. })));
    }
}
