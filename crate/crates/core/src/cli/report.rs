//! Verification reports: one record per executed check, serialized as JSON
//! and written atomically.

use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Outcome of a single check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being verified, for auditing the report.
    pub anchor: String,
    pub status: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
}

/// A full suite run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub tol_override: Option<f64>,
    pub checks: Vec<CheckRecord>,
    pub duration_seconds: f64,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }
}

/// Write `contents` to `path` atomically (temp file + rename).
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
