//! Azimuthal marginal `P(phi)` of a Wigner grid, site binning and moments.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::coherent::SiteIndexing;
use crate::wigner::WignerGrid;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PhiDistribution {
    indexing: SiteIndexing,
    phi: Vec<f64>,
    density: Vec<f64>,
    /// Grid nodes per site spacing.
    nodes_per_site: usize,
    site_probabilities: Vec<f64>,
}

/// `P(phi_j) = (2J+1)/(4 pi) sum_i w_i W(theta_i, phi_j)`, plus probabilities of
/// `delta_phi`-wide bins centred on every site. Requires `n_phi` to be a
/// multiple of `L`, so site centres are grid nodes.
pub fn marginal_phi(grid: &WignerGrid, indexing: &SiteIndexing) -> Result<PhiDistribution> {
    let n_phi = grid.n_phi();
    let sites = indexing.sites() as usize;
    if !n_phi.is_multiple_of(sites) {
        return Err(Error::InvalidArgument("n_phi must be a multiple of the number of sites"));
    }
    let pref = grid.spin().dim() as f64 / (4.0 * PI);
    let mut density = vec![0.0; n_phi];
    for (i, w) in grid.theta_weights().iter().enumerate() {
        for (p, v) in density.iter_mut().zip(grid.row(i)) {
            *p += w * v;
        }
    }
    for p in density.iter_mut() {
        *p *= pref;
    }
    let mut dist = PhiDistribution {
        indexing: *indexing,
        phi: grid.phi_nodes().to_vec(),
        density,
        nodes_per_site: n_phi / sites,
        site_probabilities: Vec::new(),
    };
    let all: Vec<i64> = indexing.site_indices().collect();
    dist.site_probabilities = dist.bin_to_sites(&all);
    Ok(dist)
}

impl PhiDistribution {
    pub fn indexing(&self) -> &SiteIndexing {
        &self.indexing
    }

    pub fn phi_nodes(&self) -> &[f64] {
        &self.phi
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.phi.len() as f64
    }

    /// Bin probabilities ordered like [`SiteIndexing::site_indices`].
    pub fn site_probabilities(&self) -> &[f64] {
        &self.site_probabilities
    }

    /// Grid node sitting on the centre of site `n`.
    pub fn site_node(&self, n: i64) -> usize {
        let n_phi = self.phi.len() as i64;
        (self.indexing.wrap(n) * self.nodes_per_site as i64 + n_phi / 2).rem_euclid(n_phi) as usize
    }

    /// `int P dphi` (periodic trapezoid).
    pub fn total(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.spacing()
    }

    /// `<phi^l> = int P(phi) phi^l dphi` over `[-pi, pi)`.
    pub fn moment(&self, l: i32) -> f64 {
        self.density.iter().zip(&self.phi).map(|(p, x)| p * x.powi(l)).sum::<f64>() * self.spacing()
    }

    /// Assigns each node's mass to the nearest of `sites` (circular distance,
    /// ties split evenly). Result is ordered like the full site list, with zeros
    /// for sites outside `sites`.
    pub fn bin_to_sites(&self, sites: &[i64]) -> Vec<f64> {
        let n_phi = self.phi.len() as i64;
        let r = self.nodes_per_site as i64;
        let centres: Vec<(usize, i64)> =
            sites.iter().map(|&n| (self.indexing.position(n), self.indexing.wrap(n) * r)).collect();
        let mut out = vec![0.0; self.indexing.sites() as usize];
        if centres.is_empty() {
            return out;
        }
        let dphi = self.spacing();
        let mut nearest = Vec::with_capacity(2);
        for (j, p) in self.density.iter().enumerate() {
            // node offset from phi = 0 in grid units
            let offset = j as i64 - n_phi / 2;
            let mut best = i64::MAX;
            nearest.clear();
            for &(pos, c) in &centres {
                let d = (offset - c).rem_euclid(n_phi);
                let d = d.min(n_phi - d);
                if d < best {
                    best = d;
                    nearest.clear();
                }
                if d == best {
                    nearest.push(pos);
                }
            }
            let share = p * dphi / nearest.len() as f64;
            for &pos in &nearest {
                out[pos] += share;
            }
        }
        out
    }

    /// Bins of width `2 delta_phi` on the sites a walk can occupy after `k`
    /// steps (`n = k mod 2`).
    pub fn sublattice_probabilities(&self, k: usize) -> Vec<f64> {
        let parity = (k % 2) as i64;
        let sites: Vec<i64> = self.indexing.site_indices().filter(|n| (n - parity).rem_euclid(2) == 0).collect();
        self.bin_to_sites(&sites)
    }

    /// Standard deviation of the site-binned distribution with `phi_n = n delta_phi`.
    pub fn site_sigma(&self) -> Result<f64> {
        let total: f64 = self.site_probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-4 {
            return Err(Error::Unnormalized { total, tolerance: 1e-4 });
        }
        let (mut m1, mut m2) = (0.0, 0.0);
        for (p, n) in self.site_probabilities.iter().zip(self.indexing.site_indices()) {
            let phi = n as f64 * self.indexing.delta_phi();
            m1 += p * phi;
            m2 += p * phi * phi;
        }
        Ok((m2 - m1 * m1).max(0.0).sqrt())
    }
}

/// `sqrt(<phi^2> - <phi>^2)` from the density on `[-pi, pi)`.
pub fn sigma_from_marginal(dist: &PhiDistribution) -> Result<f64> {
    let total = dist.total();
    if (total - 1.0).abs() > 1e-4 {
        return Err(Error::Unnormalized { total, tolerance: 1e-4 });
    }
    let m1 = dist.moment(1);
    Ok((dist.moment(2) - m1 * m1).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{site_state, SiteIndexing};
    use crate::spin::SpinQuantum;
    use crate::walk::{evolve, CoinPulse, CoinWalkerState, DensityMatrix, WalkSchedule};
    use crate::wigner::{default_n_phi, default_n_theta, kernel_weights, wigner_grid};
    use approx::assert_abs_diff_eq;

    fn walk_marginals(l: u32, spins: u32, steps: usize) -> Vec<PhiDistribution> {
        let j = SpinQuantum::from_spins(spins);
        let idx = SiteIndexing::equator(l).unwrap();
        let w = kernel_weights(j);
        let start = CoinWalkerState::coin_up(&site_state(&idx, j, 0));
        let states = evolve(&start, &CoinPulse::hadamard(), &WalkSchedule::site_aligned(idx, steps));
        states
            .iter()
            .map(|s| {
                let g = wigner_grid(s, (default_n_theta(j), default_n_phi(j, l)), &w).unwrap();
                marginal_phi(&g, &idx).unwrap()
            })
            .collect()
    }

    #[test]
    fn uniform_marginal() {
        let j = SpinQuantum::new(4);
        let idx = SiteIndexing::equator(6).unwrap();
        let g = wigner_grid(&DensityMatrix::maximally_mixed(j), (6, 48), &kernel_weights(j)).unwrap();
        let d = marginal_phi(&g, &idx).unwrap();
        for p in d.density() {
            assert_abs_diff_eq!(*p, 1.0 / (2.0 * PI), epsilon = 1e-13);
        }
        for p in d.site_probabilities() {
            assert_abs_diff_eq!(*p, 1.0 / 6.0, epsilon = 1e-13);
        }
        // discrete uniform on 48 points: sigma^2 = dphi^2 (n^2 - 1) / 12
        let expected = d.spacing() * ((48.0f64 * 48.0 - 1.0) / 12.0).sqrt();
        assert_abs_diff_eq!(sigma_from_marginal(&d).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn walk_marginals_small() {
        let d = walk_marginals(6, 50, 2);
        assert!(d[0].site_probabilities()[d[0].indexing().position(0)] > 0.99);
        assert_abs_diff_eq!(d[0].moment(1), 0.0, epsilon = 1e-12);
        let p1 = d[1].site_probabilities();
        let idx = d[1].indexing();
        assert_abs_diff_eq!(p1[idx.position(1)], p1[idx.position(-1)], epsilon = 1e-10);
        assert!(p1[idx.position(1)] > 0.45);
        assert_abs_diff_eq!(d[1].moment(1), 0.0, epsilon = 1e-12);
        for dist in &d {
            assert_abs_diff_eq!(dist.total(), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(dist.site_probabilities().iter().sum::<f64>(), 1.0, epsilon = 1e-10);
            let sub: f64 = dist.sublattice_probabilities(0).iter().sum();
            assert_abs_diff_eq!(sub, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn packet_width_shrinks_with_spins() {
        let widths: Vec<f64> = [10u32, 50, 200].iter().map(|&n| sigma_from_marginal(&walk_marginals(6, n, 0)[0]).unwrap()).collect();
        assert!(widths[0] > widths[1] && widths[1] > widths[2], "{widths:?}");
    }

    #[test]
    fn site_nodes() {
        let d = &walk_marginals(6, 4, 0)[0];
        // n_phi = 48, 8 nodes per site
        assert_eq!(d.site_node(0), 24);
        assert_eq!(d.site_node(1), 32);
        assert_eq!(d.site_node(3), 0);
        assert_abs_diff_eq!(d.phi_nodes()[d.site_node(-2)], -2.0 * PI / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_bad_grids() {
        let j = SpinQuantum::new(2);
        let g = wigner_grid(&DensityMatrix::maximally_mixed(j), (4, 10), &kernel_weights(j)).unwrap();
        assert!(marginal_phi(&g, &SiteIndexing::equator(6).unwrap()).is_err());
    }
}
