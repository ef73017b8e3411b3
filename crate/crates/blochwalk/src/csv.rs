//! CSV emitters: one header line, comma separated, LF endings, every real
//! number in C `%.12e` form (`-1.234567890123e-05`).

use std::fmt::Write as _;
use std::path::Path;

use blochwalk_core::{IdealWalk, PhiDistribution, WignerGrid};

use crate::error::RunError;

/// `printf("%.12e", x)`: 12 fraction digits and a signed, at least two-digit exponent.
pub fn sci(x: f64) -> String {
    let mut s = String::with_capacity(20);
    push_sci(&mut s, x);
    s
}

pub fn push_sci(out: &mut String, x: f64) {
    if x.is_nan() {
        out.push_str("nan");
        return;
    }
    if x.is_infinite() {
        out.push_str(if x < 0.0 { "-inf" } else { "inf" });
        return;
    }
    let rust = format!("{x:.12e}");
    let (mantissa, exp) = rust.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    let _ = write!(out, "{mantissa}e{sign}{:02}", exp.abs());
}

/// `theta,phi,weight_theta,W`, theta-major.
pub fn wigner_csv(grid: &WignerGrid) -> String {
    let mut out = String::with_capacity(grid.values().len() * 80 + 32);
    out.push_str("theta,phi,weight_theta,W\n");
    for (i, (theta, w)) in grid.theta_nodes().iter().zip(grid.theta_weights()).enumerate() {
        let (t, wt) = (sci(*theta), sci(*w));
        for (phi, v) in grid.phi_nodes().iter().zip(grid.row(i)) {
            out.push_str(&t);
            out.push(',');
            push_sci(&mut out, *phi);
            out.push(',');
            out.push_str(&wt);
            out.push(',');
            push_sci(&mut out, *v);
            out.push('\n');
        }
    }
    out
}

/// `phi,P,site_index,site_prob`; the site columns are filled on the rows whose
/// node is a site centre and left empty elsewhere.
pub fn marginal_csv(dist: &PhiDistribution) -> String {
    let idx = dist.indexing();
    let mut site_at = vec![None; dist.phi_nodes().len()];
    for (pos, n) in idx.site_indices().enumerate() {
        site_at[dist.site_node(n)] = Some((n, dist.site_probabilities()[pos]));
    }
    let mut out = String::with_capacity(dist.phi_nodes().len() * 48 + 32);
    out.push_str("phi,P,site_index,site_prob\n");
    for ((phi, p), site) in dist.phi_nodes().iter().zip(dist.density()).zip(&site_at) {
        push_sci(&mut out, *phi);
        out.push(',');
        push_sci(&mut out, *p);
        out.push(',');
        if let Some((n, prob)) = site {
            let _ = write!(out, "{n},");
            push_sci(&mut out, *prob);
        } else {
            out.push(',');
        }
        out.push('\n');
    }
    out
}

/// `k,sigma_coherent,sigma_ideal`; a missing series leaves its column empty.
pub fn sigma_csv(coherent: Option<&[f64]>, ideal: Option<&[f64]>) -> String {
    let rows = coherent.map_or(0, <[f64]>::len).max(ideal.map_or(0, <[f64]>::len));
    let mut out = String::from("k,sigma_coherent,sigma_ideal\n");
    for k in 0..rows {
        let _ = write!(out, "{k},");
        if let Some(v) = coherent.and_then(|c| c.get(k)) {
            push_sci(&mut out, *v);
        }
        out.push(',');
        if let Some(v) = ideal.and_then(|c| c.get(k)) {
            push_sci(&mut out, *v);
        }
        out.push('\n');
    }
    out
}

/// `k,site_index,phi,site_prob,sublattice_prob`: `delta_phi` bins and the
/// `2 delta_phi` bins on the sites reachable at step `k`.
pub fn sites_csv(marginals: &[PhiDistribution]) -> String {
    let mut out = String::from("k,site_index,phi,site_prob,sublattice_prob\n");
    for (k, d) in marginals.iter().enumerate() {
        let sub = d.sublattice_probabilities(k);
        for (pos, n) in d.indexing().site_indices().enumerate() {
            let _ = write!(out, "{k},{n},");
            push_sci(&mut out, d.indexing().phi(n));
            out.push(',');
            push_sci(&mut out, d.site_probabilities()[pos]);
            out.push(',');
            push_sci(&mut out, sub[pos]);
            out.push('\n');
        }
    }
    out
}

/// `k,site_index,phi,probability` for the orthogonal-site walk.
pub fn ideal_csv(walk: &IdealWalk) -> String {
    let mut out = String::from("k,site_index,phi,probability\n");
    for (k, row) in walk.probabilities.iter().enumerate() {
        for (p, n) in row.iter().zip(walk.indexing.site_indices()) {
            let _ = write!(out, "{k},{n},");
            push_sci(&mut out, walk.indexing.phi(n));
            out.push(',');
            push_sci(&mut out, *p);
            out.push('\n');
        }
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<(), RunError> {
    std::fs::write(path, text).map_err(|e| RunError::io(path, e))
}

pub fn write_wigner_csv(grid: &WignerGrid, path: &Path) -> Result<(), RunError> {
    write_text(path, &wigner_csv(grid))
}

pub fn write_marginal_csv(dist: &PhiDistribution, path: &Path) -> Result<(), RunError> {
    write_text(path, &marginal_csv(dist))
}

pub fn write_sigma_csv(coherent: Option<&[f64]>, ideal: Option<&[f64]>, path: &Path) -> Result<(), RunError> {
    write_text(path, &sigma_csv(coherent, ideal))
}
