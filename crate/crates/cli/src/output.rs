//! Artifact writers: CSV with fixed 17-significant-digit reals, LF line
//! endings, and the JSON run manifest.
//!
//! CSV bytes are a pure function of the data, so identical configs and
//! seeds diff clean. The manifest intentionally carries the
//! non-deterministic parts of a run (wall time, per-check runtimes);
//! report.json stays byte-identical across reruns.

use crate::config::{CliError, CliResult, RunConfig};
use defspec_core::harness::report::fmt_f64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub struct CsvWriter {
    buf: String,
    columns: usize,
}

impl CsvWriter {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = String::new();
        buf.push_str(&header.join(","));
        buf.push('\n');
        Self { buf, columns: header.len() }
    }

    pub fn row(&mut self, cells: &[CsvCell]) {
        assert_eq!(cells.len(), self.columns, "row width mismatch");
        let rendered: Vec<String> = cells.iter().map(|c| c.render()).collect();
        self.buf.push_str(&rendered.join(","));
        self.buf.push('\n');
    }

    pub fn bytes(&self) -> &[u8] {
        self.buf.as_bytes()
    }
}

pub enum CsvCell {
    Real(f64),
    Int(i64),
}

impl CsvCell {
    fn render(&self) -> String {
        match self {
            CsvCell::Real(v) => fmt_f64(*v),
            CsvCell::Int(v) => v.to_string(),
        }
    }
}

pub fn write_artifact(dir: &Path, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, bytes)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    config: &'a BTreeMap<String, String>,
    seed: Option<u64>,
    version: &'a str,
    wall_time_ms: u128,
    warnings: &'a [String],
    artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check_runtimes_ms: Option<BTreeMap<String, u64>>,
}

/// Writes manifest.json next to the artifacts; returns its path.
pub fn write_manifest(
    cfg: &RunConfig,
    seed: Option<u64>,
    wall_time_ms: u128,
    artifacts: &[PathBuf],
    check_runtimes: Option<BTreeMap<String, u64>>,
) -> CliResult<PathBuf> {
    let manifest = Manifest {
        command: &cfg.command,
        config: &cfg.settings,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        wall_time_ms,
        warnings: &cfg.warnings,
        artifacts: artifacts
            .iter()
            .map(|p| {
                p.file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| p.display().to_string())
            })
            .collect(),
        check_runtimes_ms: check_runtimes,
    };
    let mut json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Numeric(format!("manifest serialization failed: {e}")))?;
    json.push('\n');
    write_artifact(&cfg.out_dir, "manifest.json", json.as_bytes())
}
