//! Run configuration: flag/file merging, validation, and the resolved
//! key=value echo that goes into the run manifest.
//!
//! Config files are flat `key = value` text; `#` starts a comment.
//! Command-line flags override file values. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::path::{Path, PathBuf};

/// Exit status conventions: usage errors 2, numeric errors 3,
/// verification failures 4.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
        }
    }
}

impl From<defspec_core::Error> for CliError {
    fn from(e: defspec_core::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// `lo:hi` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub lo: f64,
    pub hi: f64,
}

/// `lo:hi:count` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

pub fn parse_range(s: &str) -> CliResult<RangeSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!(
            "expected lo:hi, got '{s}'"
        )));
    }
    let lo = parse_f64(parts[0], "range lo")?;
    let hi = parse_f64(parts[1], "range hi")?;
    if lo > hi {
        return Err(CliError::Usage(format!("range lo {lo} exceeds hi {hi}")));
    }
    Ok(RangeSpec { lo, hi })
}

pub fn parse_grid(s: &str) -> CliResult<GridSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "expected lo:hi:count, got '{s}'"
        )));
    }
    let lo = parse_f64(parts[0], "grid lo")?;
    let hi = parse_f64(parts[1], "grid hi")?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed grid count '{}'", parts[2])))?;
    if lo > hi {
        return Err(CliError::Usage(format!("grid lo {lo} exceeds hi {hi}")));
    }
    if count < 2 {
        return Err(CliError::Usage("grid needs at least two points".into()));
    }
    Ok(GridSpec { lo, hi, count })
}

fn parse_f64(s: &str, what: &str) -> CliResult<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed number for {what}: '{s}'")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("{what} must be finite")));
    }
    Ok(v)
}

/// Flat key = value config file.
pub fn read_config_file(path: &Path, allowed: &[&str]) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "{}:{}: expected key = value, got '{raw}'",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim().to_string();
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "{}:{}: unknown key '{key}' (allowed: {allowed:?})",
                path.display(),
                lineno + 1
            )));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

/// A flag value that may come from the command line (wins), the config
/// file, or a default.
pub fn resolve<'a>(
    flag: Option<&'a str>,
    file: &'a BTreeMap<String, String>,
    key: &str,
) -> Option<&'a str> {
    flag.or_else(|| file.get(key).map(|s| s.as_str()))
}

/// Fully-resolved run configuration, echoed into the manifest.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub settings: BTreeMap<String, String>,
    pub out_dir: PathBuf,
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn new(command: &str, out_dir: PathBuf) -> Self {
        Self {
            command: command.to_string(),
            settings: BTreeMap::new(),
            out_dir,
            warnings: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl fmt::Display) {
        self.settings.insert(key.to_string(), value.to_string());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }
}

/// Reduces θ into [0, 2π), recording a warning when it was out of range.
pub fn normalize_theta(theta: f64, cfg: &mut RunConfig) -> f64 {
    if (0.0..TAU).contains(&theta) {
        return theta;
    }
    let reduced = theta.rem_euclid(TAU);
    cfg.warn(format!(
        "theta {theta} outside [0, 2pi); reduced to {reduced}"
    ));
    reduced
}

/// Positive-integer cap on worker threads from DEFSPEC_THREADS.
pub fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var("DEFSPEC_THREADS") {
        Ok(v) => {
            let n: usize = v.parse().map_err(|_| {
                CliError::Usage(format!(
                    "DEFSPEC_THREADS must be a positive integer, got '{v}'"
                ))
            })?;
            if n == 0 {
                return Err(CliError::Usage(
                    "DEFSPEC_THREADS must be a positive integer, got '0'".into(),
                ));
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r = parse_range("-7:7").unwrap();
        assert_eq!((r.lo, r.hi), (-7.0, 7.0));
        assert!(parse_range("7:-7").is_err());
        assert!(parse_range("1:2:3").is_err());
        assert!(parse_range("a:b").is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("-10:10:2001").unwrap();
        assert_eq!((g.lo, g.hi, g.count), (-10.0, 10.0, 2001));
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn theta_normalization_warns() {
        let mut cfg = RunConfig::new("curve", PathBuf::from("."));
        let t = normalize_theta(7.0, &mut cfg);
        assert!((t - (7.0 - TAU)).abs() < 1e-12);
        assert_eq!(cfg.warnings.len(), 1);
        let t2 = normalize_theta(1.0, &mut cfg);
        assert_eq!(t2, 1.0);
        assert_eq!(cfg.warnings.len(), 1);
    }

    #[test]
    fn config_file_round_trip() {
        let dir = std::env::temp_dir().join("defspec-cfg-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "length = 2.0\n# comment\ntheta = 1.5\n").unwrap();
        let map = read_config_file(&path, &["length", "theta"]).unwrap();
        assert_eq!(map["length"], "2.0");
        assert_eq!(map["theta"], "1.5");
        std::fs::write(&path, "bogus = 1\n").unwrap();
        assert!(read_config_file(&path, &["length"]).is_err());
    }
}
