//! End-to-end tests of the command-line binary: exit codes, report files,
//! and the compute tables on known metrics.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gaugegeom"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn verify_forms_passes_and_writes_report() {
    let dir = std::env::temp_dir().join(format!("gaugegeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("forms.json");
    let out = run(&[
        "verify",
        "--suite",
        "forms",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = std::fs::read_to_string(&report).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["suite"], "forms");
    let checks = json["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "pass", "{c}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_report_is_deterministic_modulo_duration() {
    let dir = std::env::temp_dir().join(format!("gaugegeom-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut bodies = Vec::new();
    for name in ["a.json", "b.json"] {
        let report = dir.join(name);
        let out = run(&[
            "verify",
            "--suite",
            "lie",
            "--seed",
            "7",
            "--report",
            report.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let mut json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        json.as_object_mut().unwrap().remove("duration_seconds");
        bodies.push(json);
    }
    assert_eq!(bodies[0], bodies[1]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_tol_override_can_force_failure() {
    let out = run(&["verify", "--suite", "forms", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("fail"));
}

#[test]
fn compute_unknown_kind_is_usage_error() {
    let out = run(&["compute", "--kind", "spectral", "--metric", &data("minkowski.toml")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_missing_file_is_io_error() {
    let out = run(&["compute", "--kind", "tractor", "--metric", "/no/such/file.toml"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compute_rejects_degenerate_metric() {
    let out = run(&["compute", "--kind", "tractor", "--metric", &data("degenerate.toml")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn compute_rejects_malformed_spec() {
    let dir = std::env::temp_dir().join(format!("gaugegeom-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "dim = 4\nunknown_key = 1\n").unwrap();
    let out = run(&["compute", "--kind", "tractor", "--metric", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compute_tractor_on_minkowski_is_all_zero() {
    let out = run(&[
        "compute",
        "--kind",
        "tractor",
        "--metric",
        &data("minkowski.toml"),
        "--points",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x0,x1,x2,x3,comp_mu,comp_nu,block,i,j,value"
    );
    let mut rows = 0;
    for line in lines {
        let value: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(value.abs() <= 1e-10, "nonzero entry in {line}");
        rows += 1;
    }
    // the same block rows appear for each of the 2 points
    assert!(rows > 0 && rows % 2 == 0, "unexpected row count {rows}");
}

#[test]
fn compute_lagrangian_on_conformally_flat_metric_vanishes() {
    let dir = std::env::temp_dir().join(format!("gaugegeom-lag-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("lag.csv");
    let out = run(&[
        "compute",
        "--kind",
        "lagrangian",
        "--metric",
        &data("conformally_flat.toml"),
        "--points",
        "2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("x0,x1,x2,x3,tractor,twistor,weyl"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        for &v in &cols[4..7] {
            assert!(v.abs() <= 1e-9, "nonzero density in {line}");
        }
        rows += 1;
    }
    assert_eq!(rows, 2);
    std::fs::remove_dir_all(&dir).ok();
}
