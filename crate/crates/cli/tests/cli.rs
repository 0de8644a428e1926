//! End-to-end CLI behavior: exit codes, artifact stability, config-file
//! merging, and flag validation.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_defspec")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("defspec-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(bin()).args(args).output().expect("spawn defspec")
}

fn read(path: &Path) -> String {
    String::from_utf8(std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn spectra_momentum_window() {
    let dir = scratch("spectra");
    let out = run(&[
        "spectra",
        "--model",
        "momentum",
        "--length",
        "1",
        "--theta",
        "0",
        "--window",
        "-7:7",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = read(&dir.join("spectra.csv"));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "eigenvalue,multiplicity");
    assert_eq!(lines.len(), 4, "expected three eigenvalues: {csv}");
    assert!(lines[1].starts_with("-6.2831853071795862e0"));
    assert!(lines[2].starts_with("0.0000000000000000e0"));
    assert!(lines[3].starts_with("6.2831853071795862e0"));
    assert!(dir.join("manifest.json").exists());
}

#[test]
fn envelope_constant_pi() {
    let dir = scratch("envelope");
    let out = run(&[
        "envelope",
        "--length",
        "1",
        "--t-range",
        "0:6.283185307179586:9",
        "--theta-grid",
        "32",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = read(&dir.join("envelope.csv"));
    for line in csv.lines().skip(1) {
        let value: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((value - std::f64::consts::PI).abs() < 1e-6, "{line}");
    }
}

#[test]
fn csv_bytes_stable_across_runs() {
    let d1 = scratch("stable1");
    let d2 = scratch("stable2");
    for d in [&d1, &d2] {
        let out = run(&[
            "curve",
            "--model",
            "momentum",
            "--length",
            "1",
            "--theta",
            "1.25",
            "--t-range",
            "-10:10:101",
            "--out-dir",
            d.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(d1.join("curve.csv")).unwrap(),
        std::fs::read(d2.join("curve.csv")).unwrap()
    );
}

#[test]
fn usage_errors_exit_two() {
    let dir = scratch("usage");
    let neg = run(&[
        "spectra",
        "--model",
        "momentum",
        "--length",
        "-1",
        "--window",
        "-7:7",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(neg.status.code(), Some(2), "{neg:?}");

    let unknown_flag = run(&["spectra", "--bogus", "1"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let malformed = run(&[
        "curve",
        "--t-range",
        "0:1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(malformed.status.code(), Some(2));

    let missing = run(&["spectra", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2), "window is required");
}

#[test]
fn numeric_errors_exit_three() {
    let dir = scratch("numeric");
    // Laguerre trusted window cannot reach 1e9
    let out = run(&[
        "spectra",
        "--model",
        "laguerre",
        "--truncation",
        "64",
        "--window",
        "999999000:1000000000",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn theta_out_of_range_warns_in_manifest() {
    let dir = scratch("warn");
    let out = run(&[
        "spectra",
        "--model",
        "momentum",
        "--theta",
        "7.0",
        "--window",
        "-7:7",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let manifest = read(&dir.join("manifest.json"));
    assert!(manifest.contains("reduced to"), "{manifest}");
}

#[test]
fn config_file_merging_and_override() {
    let dir = scratch("config");
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "length = 2.0\ntheta = 0\nwindow = -4:4\n").unwrap();
    let out = run(&[
        "spectra",
        "--model",
        "momentum",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = read(&dir.join("spectra.csv"));
    // L = 2 lattice spacing pi: three points in [-4, 4]
    assert_eq!(csv.lines().count(), 1 + 3, "{csv}");

    // flag overrides the file value: L = 1 spacing 2pi leaves only 0
    let out = run(&[
        "spectra",
        "--model",
        "momentum",
        "--config",
        cfg.to_str().unwrap(),
        "--length",
        "1",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = read(&dir.join("spectra.csv"));
    assert_eq!(csv.lines().count(), 1 + 1, "{csv}");

    // unknown keys rejected
    std::fs::write(&cfg, "nonsense = 1\n").unwrap();
    let out = run(&[
        "spectra",
        "--config",
        cfg.to_str().unwrap(),
        "--window",
        "-4:4",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_unknown_suite() {
    let dir = scratch("verify");
    let ok = run(&[
        "verify",
        "--suite",
        "bound",
        "--seed",
        "42",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(ok.status.success(), "{ok:?}");
    assert!(dir.join("report.json").exists());

    let bad = run(&["verify", "--suite", "nonsense", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3), "{bad:?}");

    let bad_threads = run(&["verify", "--suite", "bound", "--threads", "0"]);
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn sample_emits_convergence_table() {
    let dir = scratch("sample");
    let out = run(&[
        "sample",
        "--profile",
        "ramp",
        "--k-max",
        "100",
        "--lambda-range",
        "-20:20:41",
        "--convergence",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let conv = read(&dir.join("sample_convergence.csv"));
    let lines: Vec<&str> = conv.lines().collect();
    assert_eq!(lines[0], "k_max,sup_error,rms_error");
    assert!(lines.len() >= 3);
    let first_sup: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    let last_sup: f64 = lines.last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!(last_sup <= first_sup * 2.0, "{conv}");
}
