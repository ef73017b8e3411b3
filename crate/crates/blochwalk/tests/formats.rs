//! Artifact layout and contents, checked by reading the files back.

use std::collections::BTreeSet;
use std::path::Path;

use blochwalk::svg::{diverging_color, heatmap_svg};
use blochwalk::{parse_config, run_experiment, simulate};
use blochwalk_core::{default_n_phi, kernel_weights, wigner_grid, DensityMatrix, SiteIndexing, SpinQuantum};

fn run(dir: &Path, extra: &[&str]) {
    let mut argv = vec!["blochwalk", "--out", dir.to_str().unwrap()];
    argv.extend_from_slice(extra);
    run_experiment(&parse_config(argv).unwrap()).unwrap();
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn file_names(dir: &Path) -> BTreeSet<String> {
    std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect()
}

/// `-?d.dddddddddddde[+-]dd+`
fn is_c_sci(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let Some((m, e)) = s.split_once('e') else { return false };
    let mb = m.as_bytes();
    mb.len() == 14
        && mb[0].is_ascii_digit()
        && mb[1] == b'.'
        && mb[2..].iter().all(u8::is_ascii_digit)
        && (e.starts_with('+') || e.starts_with('-'))
        && e.len() >= 3
        && e[1..].bytes().all(|b| b.is_ascii_digit())
}

#[test]
fn full_default_run_layout() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--steps", "2"]);
    let expected: BTreeSet<String> = [
        "ideal.csv", "manifest.json", "marginal_k000.csv", "marginal_k001.csv", "marginal_k002.csv", "sigma.csv",
        "sites.csv", "wigner_k000.csv", "wigner_k000.svg", "wigner_k001.csv", "wigner_k001.svg", "wigner_k002.csv",
        "wigner_k002.svg",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(file_names(dir.path()), expected);

    let manifest: serde_json::Value = serde_json::from_str(&read(dir.path(), "manifest.json")).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert_eq!(files.len(), 12);
    for f in files {
        let name = f["path"].as_str().unwrap();
        let bytes = std::fs::read(dir.path().join(name)).unwrap();
        assert_eq!(f["bytes"].as_u64().unwrap(), bytes.len() as u64);
        assert_eq!(f["sha256"].as_str().unwrap(), blochwalk::run::sha256_hex(&bytes));
    }
    assert_eq!(manifest["config"]["sites"], 6);
    assert_eq!(manifest["normalization_residuals"].as_array().unwrap().len(), 3);
}

#[test]
fn wigner_csv_shape_and_number_format() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--spins", "10", "--steps", "1", "--grid-theta", "14", "--grid-phi", "30", "--outputs", "wigner"]);
    let text = read(dir.path(), "wigner_k001.csv");
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,phi,weight_theta,W");
    assert_eq!(lines.len(), 14 * 30 + 1);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        assert!(fields.iter().all(|f| is_c_sci(f)), "{line}");
    }
    // theta-major, theta ascending, phi starting at -pi
    let theta: Vec<f64> = lines[1..].iter().step_by(30).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(theta.windows(2).all(|w| w[0] < w[1]));
    assert!(lines[1].split(',').nth(1).unwrap().starts_with("-3.141592653590e+00"));

    // re-integrating the file reproduces the normalization
    let j = SpinQuantum::from_spins(10);
    let dphi = 2.0 * std::f64::consts::PI / 30.0;
    let total: f64 = lines[1..]
        .iter()
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            v[2] * v[3] * dphi
        })
        .sum::<f64>()
        * (j.dim() as f64)
        / (4.0 * std::f64::consts::PI);
    assert!((total - 1.0).abs() < 1e-9, "{total}");
}

#[test]
fn marginal_integrates_to_one_and_marks_sites() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--sites", "40", "--spins", "200", "--steps", "3", "--outputs", "marginal"]);
    for k in 0..=3 {
        let text = read(dir.path(), &format!("marginal_k{k:03}.csv"));
        let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
        assert_eq!(rows.len(), default_n_phi(SpinQuantum::from_spins(200), 40));
        let phi: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
        let p: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
        // periodic trapezoid rule
        let h = phi[1] - phi[0];
        let total: f64 = (0..p.len()).map(|i| 0.5 * h * (p[i] + p[(i + 1) % p.len()])).sum();
        assert!((total - 1.0).abs() < 1e-6, "k={k}: {total}");

        let marked: Vec<(i64, f64)> = rows.iter().filter(|r| !r[2].is_empty()).map(|r| (r[2].parse().unwrap(), r[3].parse().unwrap())).collect();
        assert_eq!(marked.len(), 40);
        let sum: f64 = marked.iter().map(|m| m.1).sum();
        assert!((sum - 1.0).abs() < 1e-6);
        for (n, _) in &marked {
            let row = rows.iter().find(|r| r[2] == n.to_string()).unwrap();
            let at: f64 = row[0].parse().unwrap();
            let site = *n as f64 * 2.0 * std::f64::consts::PI / 40.0;
            assert!((at - site).abs() < 1e-9 || (at + 2.0 * std::f64::consts::PI - site).abs() < 1e-9);
        }
    }
}

#[test]
fn sigma_only_run_skips_grid_files() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--steps", "4", "--outputs", "sigma"]);
    assert_eq!(file_names(dir.path()), BTreeSet::from(["manifest.json".to_string(), "sigma.csv".to_string()]));
    let text = read(dir.path(), "sigma.csv");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,sigma_coherent,sigma_ideal");
    assert_eq!(lines.len(), 4 + 2);
    for (k, line) in lines[1..].iter().enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], k.to_string());
        assert!(is_c_sci(f[1]) && is_c_sci(f[2]));
    }
}

#[test]
fn ideal_only_run_needs_no_grid() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--steps", "2", "--outputs", "ideal"]);
    let text = read(dir.path(), "ideal.csv");
    let row = text.lines().find(|l| l.starts_with("2,0,")).unwrap();
    assert!(row.ends_with(",5.000000000000e-01"), "{row}");
    assert_eq!(text.lines().count(), 1 + 3 * 6);
}

#[test]
fn sites_csv_lists_both_binnings() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--steps", "2", "--outputs", "sites"]);
    let text = read(dir.path(), "sites.csv");
    assert_eq!(text.lines().next().unwrap(), "k,site_index,phi,site_prob,sublattice_prob");
    let rows: Vec<Vec<String>> = text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 3 * 6);
    for k in 0..=2 {
        let (mut a, mut b) = (0.0, 0.0);
        for r in rows.iter().filter(|r| r[0] == k.to_string()) {
            let n: i64 = r[1].parse().unwrap();
            let sub: f64 = r[4].parse().unwrap();
            a += r[3].parse::<f64>().unwrap();
            b += sub;
            if (n - k as i64).rem_euclid(2) != 0 {
                assert_eq!(sub, 0.0, "k={k} n={n}");
            }
        }
        assert!((a - 1.0).abs() < 1e-6 && (b - 1.0).abs() < 1e-6);
    }
}

#[test]
fn svg_of_flat_grid_is_one_color() {
    let j = SpinQuantum::from_spins(6);
    let grid = wigner_grid(&DensityMatrix::maximally_mixed(j), (8, 12), &kernel_weights(j)).unwrap();
    let svg = heatmap_svg(&grid, &SiteIndexing::equator(6).unwrap(), "flat");
    let cells = svg.split("<g id=\"cells\"").nth(1).unwrap().split("</g>").next().unwrap();
    let fills: BTreeSet<&str> = cells.split("fill=\"").skip(1).map(|s| &s[..7]).collect();
    assert_eq!(fills.len(), 1, "{fills:?}");
    // one merged rect per row
    assert_eq!(cells.matches("<rect").count(), 8);
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
}

#[test]
fn svg_color_scale_is_symmetric() {
    let config = parse_config(["blochwalk", "--steps", "2", "--outputs", "wigner"]).unwrap();
    let sim = simulate(&config).unwrap();
    let grid = &sim.grids[2];
    let svg = heatmap_svg(grid, &sim.indexing, "k = 2");
    let scale = grid.max_abs();
    assert!(svg.contains(&format!(">{:+.3e}<", scale)));
    assert!(svg.contains(&format!(">{:+.3e}<", -scale)));
    // the cat state has negative fringes, so both ends of the map appear
    let cells = svg.split("<g id=\"cells\"").nth(1).unwrap().split("</g>").next().unwrap();
    let lo = grid.values().iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    assert!(lo < -0.05 * scale);
    assert!(cells.contains(&diverging_color(lo / scale)) && cells.contains(&diverging_color(hi / scale)));
}

#[test]
fn custom_hadamard_matches_preset() {
    let h = std::f64::consts::PI * std::f64::consts::FRAC_1_SQRT_2;
    let hs = format!("{h:.17}");
    let preset = simulate(&parse_config(["blochwalk", "--steps", "3", "--outputs", "sites"]).unwrap()).unwrap();
    let custom = simulate(
        &parse_config(["blochwalk", "--steps", "3", "--outputs", "sites", "--coin", "custom", &hs, "0", &hs]).unwrap(),
    )
    .unwrap();
    for (a, b) in preset.grids.iter().zip(&custom.grids) {
        let d = a.values().iter().zip(b.values()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        assert!(d < 1e-12, "{d}");
    }
    assert_eq!(preset.sigma_ideal.len(), custom.sigma_ideal.len());
}
