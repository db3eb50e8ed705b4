//! Command-line surface: run named verification suites with seeds and
//! tolerance overrides, and compute curvature block / Lagrangian tables
//! from metric-spec files.
//!
//! Exit codes: 0 all checks pass, 1 check failure, 2 usage error, 3 I/O
//! failure, 4 degenerate metric input.

pub mod compute;
pub mod metric;
pub mod report;
pub mod suites;

use crate::sample::DEFAULT_SEED;
use clap::{Parser, Subcommand};
use metric::MetricSpec;
use report::{CheckRecord, Report};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "gaugegeom",
    about = "Verification suites and curvature/Lagrangian tables for twisted gauge geometry"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite and optionally write a JSON report.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replace every check's tolerance with this value.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here (atomically).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate curvature blocks or Lagrangian densities on a metric spec.
    Compute {
        /// One of: tractor, twistor, lagrangian.
        #[arg(long)]
        kind: String,
        /// Path to a TOML metric-spec file.
        #[arg(long)]
        metric: PathBuf,
        /// Number of seeded sample points.
        #[arg(long)]
        points: Option<usize>,
        /// Output CSV path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_PASS: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_IO: i32 = 3;
const EXIT_DEGENERATE: i32 = 4;

/// Parse the process arguments and run; returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return EXIT_USAGE;
        }
    };
    match cli.cmd {
        Cmd::Verify {
            suite,
            seed,
            tol,
            report,
        } => verify(&suite, seed, tol, report.as_deref()),
        Cmd::Compute {
            kind,
            metric,
            points,
            out,
        } => compute_cmd(&kind, &metric, points, out.as_deref()),
    }
}

fn verify(suite: &str, seed: u64, tol: Option<f64>, report_path: Option<&std::path::Path>) -> i32 {
    let names: Vec<&str> = if suite == "all" {
        suites::SUITE_NAMES.to_vec()
    } else if suites::suite_checks(suite).is_some() {
        vec![suite]
    } else {
        eprintln!(
            "unknown suite {suite:?}; expected one of: all, {}",
            suites::SUITE_NAMES.join(", ")
        );
        return EXIT_USAGE;
    };

    let start = Instant::now();
    let mut records = Vec::new();
    for name in &names {
        for check in suites::suite_checks(name).expect("validated above") {
            let tolerance = tol.unwrap_or(check.tol);
            let (err, samples, status) = match (check.run)(seed) {
                Ok((err, samples)) => {
                    let ok = err <= tolerance;
                    (err, samples, if ok { "pass" } else { "fail" })
                }
                Err(e) => {
                    eprintln!("check {}/{} errored: {e}", name, check.id);
                    (f64::INFINITY, 0, "fail")
                }
            };
            println!(
                "{name}/{id}: {status} (max error {err:.3e}, tolerance {tolerance:.1e})",
                id = check.id
            );
            records.push(CheckRecord {
                id: format!("{name}/{}", check.id),
                anchor: check.anchor.to_string(),
                status: status.to_string(),
                max_abs_error: err,
                tolerance,
                samples,
                seed,
            });
        }
    }

    let rep = Report {
        suite: suite.to_string(),
        seed,
        tol_override: tol,
        checks: records,
        duration_seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(path) = report_path {
        let json = serde_json::to_string_pretty(&rep).expect("report serialization");
        if let Err(e) = report::write_atomic(path, &json) {
            eprintln!("writing report {}: {e}", path.display());
            return EXIT_IO;
        }
    }
    if rep.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn compute_cmd(
    kind: &str,
    metric_path: &std::path::Path,
    points: Option<usize>,
    out: Option<&std::path::Path>,
) -> i32 {
    let text = match std::fs::read_to_string(metric_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("reading {}: {e}", metric_path.display());
            return EXIT_IO;
        }
    };
    let spec: MetricSpec = match toml::from_str(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parsing {}: {e}", metric_path.display());
            return EXIT_USAGE;
        }
    };
    let g = match spec.build() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("building metric: {e}");
            return EXIT_USAGE;
        }
    };
    let n = points.unwrap_or_else(suites::n_samples);
    match metric::preflight(&g, n.max(20), DEFAULT_SEED) {
        Ok(None) => {}
        Ok(Some((x, det))) => {
            eprintln!("degenerate metric: |det g| = {det:.3e} at {x:?}");
            return EXIT_DEGENERATE;
        }
        Err(e) => {
            eprintln!("metric pre-flight failed: {e}");
            return EXIT_DEGENERATE;
        }
    }

    let table = match kind {
        "tractor" => compute::tractor_table(&g, n, DEFAULT_SEED),
        "twistor" => compute::twistor_table(&g, n, DEFAULT_SEED),
        "lagrangian" => compute::lagrangian_table(&g, n, DEFAULT_SEED),
        other => {
            eprintln!("unknown kind {other:?}; expected tractor, twistor, or lagrangian");
            return EXIT_USAGE;
        }
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            eprintln!("computation failed: {e}");
            return EXIT_FAIL;
        }
    };
    match out {
        None => {
            print!("{table}");
            EXIT_PASS
        }
        Some(path) => match report::write_atomic(path, &table) {
            Ok(()) => EXIT_PASS,
            Err(e) => {
                eprintln!("writing {}: {e}", path.display());
                EXIT_IO
            }
        },
    }
}
