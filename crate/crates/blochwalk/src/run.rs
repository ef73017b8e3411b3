//! Experiment orchestration: evolve, evaluate Wigner grids in parallel over
//! polar nodes, reduce to marginals and moments, write artifacts and a manifest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use blochwalk_core::{
    coin_unitary, evolve, ideal_sigma, ideal_walk, kernel_weights, marginal_phi, sigma_from_marginal, site_state,
    CoinWalkerState, GridPlan, IdealWalk, KernelWeights, PhiDistribution, PhiGrid, SiteIndexing, SpinQuantum,
    ThetaSlice, WalkSchedule, WignerGrid, WignerInput,
};
use blochwalk_core::quadrature::theta_nodes;
use log::{info, warn};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::{Output, RunConfig};
use crate::csv;
use crate::error::RunError;
use crate::svg;

/// Grid normalization residuals beyond this abort the run.
pub const RESIDUAL_LIMIT: f64 = 1e-4;

/// Kernel matrices for every polar node, built in parallel.
pub fn build_plan(weights: &KernelWeights, n_theta: usize, n_phi: usize) -> Result<GridPlan, RunError> {
    let (theta, w) = theta_nodes(n_theta);
    let slices = theta
        .par_iter()
        .zip(w.par_iter())
        .map(|(t, w)| ThetaSlice::new(*t, *w, weights))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| RunError::numerical("kernel matrices", e))?;
    let phi = PhiGrid::new(n_phi).map_err(|e| RunError::Config(e.to_string()))?;
    GridPlan::from_slices(weights.spin(), slices, phi).map_err(|e| RunError::Config(e.to_string()))
}

/// Row-parallel evaluation; rows are independent, so the result does not
/// depend on scheduling.
pub fn evaluate_grid(plan: &GridPlan, input: WignerInput<'_>) -> WignerGrid {
    let n_phi = plan.phi().len();
    let mut values = vec![0.0; plan.slices().len() * n_phi];
    values.par_chunks_mut(n_phi).zip(plan.slices().par_iter()).for_each(|(row, slice)| {
        let c = input.coefficients(slice);
        ThetaSlice::evaluate_row(&c, plan.phi(), row);
    });
    plan.assemble(values)
}

/// Everything computed for one configuration, before any file is written.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub config: RunConfig,
    pub spin: SpinQuantum,
    pub indexing: SiteIndexing,
    pub states: Vec<CoinWalkerState>,
    /// One per step; empty when no grid-derived output was requested.
    pub grids: Vec<WignerGrid>,
    pub marginals: Vec<PhiDistribution>,
    /// `normalization - 1` per step.
    pub residuals: Vec<f64>,
    pub sigma_coherent: Vec<f64>,
    pub ideal: IdealWalk,
    pub sigma_ideal: Vec<f64>,
}

impl Simulation {
    pub fn has_grids(&self) -> bool {
        !self.grids.is_empty()
    }
}

fn needs_grids(config: &RunConfig) -> bool {
    [Output::Wigner, Output::Marginal, Output::Sites, Output::Sigma].iter().any(|o| config.wants(*o))
}

pub fn simulate(config: &RunConfig) -> Result<Simulation, RunError> {
    let spin = config.spin();
    let indexing =
        SiteIndexing::new(config.sites, config.theta0).map_err(|e| RunError::Config(e.to_string()))?;
    let steps = config.steps as usize;
    let pulse = config.coin.pulse();

    let start = CoinWalkerState::coin_up(&site_state(&indexing, spin, 0));
    let states = evolve(&start, &pulse, &WalkSchedule::site_aligned(indexing, steps));
    for (k, s) in states.iter().enumerate() {
        let drift = (s.norm_sqr() - 1.0).abs();
        if drift > 1e-10 {
            return Err(RunError::numerical(format!("step {k}, state norm"), format!("|norm - 1| = {drift:e}")));
        }
    }

    let ideal = ideal_walk(&indexing, steps, &coin_unitary(&pulse));
    let sigma_ideal = ideal
        .probabilities
        .iter()
        .enumerate()
        .map(|(k, p)| ideal_sigma(p, &indexing).map_err(|e| RunError::numerical(format!("step {k}, ideal sigma"), e)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut sim = Simulation {
        config: config.clone(),
        spin,
        indexing,
        states,
        grids: Vec::new(),
        marginals: Vec::new(),
        residuals: Vec::new(),
        sigma_coherent: Vec::new(),
        ideal,
        sigma_ideal,
    };
    if !needs_grids(config) {
        return Ok(sim);
    }

    let t0 = Instant::now();
    let weights = kernel_weights(spin);
    let plan = build_plan(&weights, config.n_theta, config.n_phi)?;
    info!("kernel matrices for {} polar nodes in {:.2?}", config.n_theta, t0.elapsed());

    for (k, state) in sim.states.iter().enumerate() {
        let grid = evaluate_grid(&plan, WignerInput::Pure(state));
        let residual = grid.normalization() - 1.0;
        if residual.abs() > RESIDUAL_LIMIT {
            return Err(RunError::numerical(
                format!("step {k}, Wigner normalization"),
                format!("residual {residual:e} exceeds {RESIDUAL_LIMIT:e}; increase grid-theta / grid-phi"),
            ));
        }
        if residual.abs() > 1e-6 {
            warn!("step {k}: Wigner normalization residual {residual:e}");
        }
        let marginal =
            marginal_phi(&grid, &indexing).map_err(|e| RunError::numerical(format!("step {k}, marginal"), e))?;
        let sigma = sigma_from_marginal(&marginal)
            .map_err(|e| RunError::numerical(format!("step {k}, sigma from marginal"), e))?;
        sim.residuals.push(residual);
        sim.sigma_coherent.push(sigma);
        sim.grids.push(grid);
        sim.marginals.push(marginal);
    }
    info!("{} Wigner grids in {:.2?}", sim.grids.len(), t0.elapsed());
    Ok(sim)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileRecord {
    /// Relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone)]
pub struct RunManifest {
    pub config: RunConfig,
    pub version: String,
    pub duration_seconds: f64,
    pub residuals: Vec<f64>,
    pub files: Vec<FileRecord>,
    pub warnings: Vec<String>,
}

impl RunManifest {
    /// Keys come out sorted (serde_json's map is ordered).
    pub fn to_json(&self) -> Value {
        json!({
            "tool": { "name": env!("CARGO_PKG_NAME"), "version": self.version },
            "config": self.config.to_json(),
            "duration_seconds": self.duration_seconds,
            "normalization_residuals": self.residuals,
            "files": self.files.iter().map(|f| json!({ "path": f.path, "sha256": f.sha256, "bytes": f.bytes })).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(s, "{b:02x}");
    }
    s
}

struct ArtifactWriter {
    dir: PathBuf,
    files: Vec<FileRecord>,
}

impl ArtifactWriter {
    fn write(&mut self, name: &str, contents: &str) -> Result<(), RunError> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| RunError::io(&path, e))?;
        self.files.push(FileRecord {
            path: name.to_string(),
            sha256: sha256_hex(contents.as_bytes()),
            bytes: contents.len() as u64,
        });
        Ok(())
    }
}

pub fn write_artifacts(sim: &Simulation, dir: &Path) -> Result<Vec<FileRecord>, RunError> {
    std::fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
    let config = &sim.config;
    let mut w = ArtifactWriter { dir: dir.to_path_buf(), files: Vec::new() };
    if config.wants(Output::Wigner) {
        for (k, grid) in sim.grids.iter().enumerate() {
            w.write(&format!("wigner_k{k:03}.csv"), &csv::wigner_csv(grid))?;
            if config.svg {
                let title = format!("W(theta, phi)  k = {k}, L = {}, N = {}", config.sites, config.spins);
                w.write(&format!("wigner_k{k:03}.svg"), &svg::heatmap_svg(grid, &sim.indexing, &title))?;
            }
        }
    }
    if config.wants(Output::Marginal) {
        for (k, m) in sim.marginals.iter().enumerate() {
            w.write(&format!("marginal_k{k:03}.csv"), &csv::marginal_csv(m))?;
        }
    }
    if config.wants(Output::Sites) {
        w.write("sites.csv", &csv::sites_csv(&sim.marginals))?;
    }
    if config.wants(Output::Sigma) {
        w.write("sigma.csv", &csv::sigma_csv(Some(&sim.sigma_coherent), Some(&sim.sigma_ideal)))?;
    }
    if config.wants(Output::Ideal) {
        w.write("ideal.csv", &csv::ideal_csv(&sim.ideal))?;
    }
    w.files.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(w.files)
}

/// Simulates, writes every requested artifact, then `manifest.json` last.
pub fn run_experiment(config: &RunConfig) -> Result<RunManifest, RunError> {
    let started = Instant::now();
    let warnings = config.warnings();
    for w in &warnings {
        warn!("{w}");
    }
    let sim = simulate(config)?;
    let files = write_artifacts(&sim, &config.out_dir)?;
    let manifest = RunManifest {
        config: config.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        duration_seconds: started.elapsed().as_secs_f64(),
        residuals: sim.residuals.clone(),
        files,
        warnings,
    };
    let path = config.out_dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest.to_json()).expect("manifest serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| RunError::io(&path, e))?;
    Ok(manifest)
}
