//! Argument parsing, config-file layering and process exit codes.

use std::process::Command;

use blochwalk::config::Coin;
use blochwalk::{parse_config, Output, RunError};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blochwalk"))
}

#[test]
fn defaults() {
    let c = parse_config(["blochwalk"]).unwrap();
    assert_eq!((c.sites, c.spins, c.steps), (6, 50, 2));
    assert_eq!(c.coin, Coin::Hadamard);
    assert_eq!(c.theta0, std::f64::consts::FRAC_PI_2);
    assert_eq!((c.n_theta, c.n_phi), (52, 96));
    assert_eq!(c.outputs.len(), Output::ALL.len());
    assert!(c.svg);
}

#[test]
fn run_subcommand_matches_bare_flags() {
    let a = parse_config(["blochwalk", "run", "--sites", "40", "--spins", "200", "--steps", "9"]).unwrap();
    let b = parse_config(["blochwalk", "--sites", "40", "--spins", "200", "--steps", "9"]).unwrap();
    assert_eq!(a, b);
    assert_eq!((a.n_theta, a.n_phi), (202, 320));
}

#[test]
fn rejects_bad_values() {
    for argv in [
        &["blochwalk", "--steps", "-1"][..],
        &["blochwalk", "--sites", "1"],
        &["blochwalk", "--spins", "0"],
        &["blochwalk", "--theta0", "4"],
        &["blochwalk", "--sites", "7", "--grid-phi", "100"],
        &["blochwalk", "--coin", "custom", "1", "2"],
        &["blochwalk", "--coin", "bogus"],
        &["blochwalk", "--outputs", "wigner,bogus"],
    ] {
        assert!(matches!(parse_config(argv.iter().copied()), Err(RunError::Config(_))), "{argv:?}");
    }
}

#[test]
fn custom_coin_and_outputs() {
    let c = parse_config(["blochwalk", "--coin", "custom", "0.5", "-1", "0", "--outputs", "sigma,ideal", "--no-svg"]).unwrap();
    assert_eq!(c.coin, Coin::Custom([0.5, -1.0, 0.0]));
    assert!(c.wants(Output::Sigma) && c.wants(Output::Ideal) && !c.wants(Output::Wigner));
    assert!(!c.svg);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walk.conf");
    std::fs::write(&path, "# L=40 setup\nsites = 40\nspins = 200\nsteps = 5\ngrid_phi = 400\nsvg = false\n").unwrap();
    let p = path.to_str().unwrap();
    let c = parse_config(["blochwalk", "--config", p, "--steps", "3"]).unwrap();
    assert_eq!((c.sites, c.spins, c.steps, c.n_phi), (40, 200, 3, 400));
    assert!(!c.svg);
    let c = parse_config(["blochwalk", "--config", p, "--svg"]).unwrap();
    assert!(c.svg);
}

#[test]
fn config_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "sites = 6\nwalkers = 3\n").unwrap();
    let err = parse_config(["blochwalk", "--config", path.to_str().unwrap()]).unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    let missing = parse_config(["blochwalk", "--config", "/nonexistent/blochwalk.conf"]).unwrap_err();
    assert_eq!(missing.exit_code(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = bin().args(["--sites", "6", "--spins", "10", "--steps", "1", "--outputs", "sigma", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("wrote "));

    let bad = bin().args(["--steps", "-1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let bad = bin().args(["--sites", "5", "--grid-phi", "12"]).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("blochwalk:"));

    // an undersized grid cannot integrate to one
    let coarse = bin().args(["--spins", "200", "--grid-theta", "4", "--grid-phi", "6", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(coarse.status.code(), Some(3), "{}", String::from_utf8_lossy(&coarse.stderr));

    let help = bin().arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
