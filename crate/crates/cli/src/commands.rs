//! Subcommand implementations: each resolves its configuration, runs the
//! computation, and writes CSV/JSON artifacts plus a manifest.

use crate::config::{
    normalize_theta, parse_grid, parse_range, read_config_file, resolve, CliError, CliResult,
    GridSpec, RunConfig,
};
use crate::output::{write_artifact, write_manifest, CsvCell, CsvWriter};

use defspec_core::extensions::{spectrum_of, ExtensionFamily};
use defspec_core::harness::run_suite;
use defspec_core::models::laguerre::LaguerreSecondOrderModel;
use defspec_core::models::momentum::{momentum_uncertainty_bracket, MomentumIntervalModel};
use defspec_core::sampling::{reconstruction_error, transform_value, reconstruct, BandlimitedTestFunction};
use defspec_core::uncertainty::{curve_samples, envelope_at};
use defspec_core::Interval;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::PathBuf;
use std::time::Instant;

fn get_f64(map: &BTreeMap<String, String>, flag: Option<&str>, key: &str) -> CliResult<Option<f64>> {
    match resolve(flag, map, key) {
        Some(s) => {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("malformed number for {key}: '{s}'")))?;
            if !v.is_finite() {
                return Err(CliError::Usage(format!("{key} must be finite")));
            }
            Ok(Some(v))
        }
        None => Ok(None),
    }
}

fn get_usize(
    map: &BTreeMap<String, String>,
    flag: Option<&str>,
    key: &str,
) -> CliResult<Option<usize>> {
    match resolve(flag, map, key) {
        Some(s) => Ok(Some(s.trim().parse().map_err(|_| {
            CliError::Usage(format!("malformed integer for {key}: '{s}'"))
        })?)),
        None => Ok(None),
    }
}

fn get_i64(map: &BTreeMap<String, String>, flag: Option<&str>, key: &str) -> CliResult<Option<i64>> {
    match resolve(flag, map, key) {
        Some(s) => Ok(Some(s.trim().parse().map_err(|_| {
            CliError::Usage(format!("malformed integer for {key}: '{s}'"))
        })?)),
        None => Ok(None),
    }
}

fn require_positive_length(length: f64) -> CliResult<f64> {
    if length <= 0.0 {
        return Err(CliError::Usage(format!(
            "length must be positive, got {length}"
        )));
    }
    Ok(length)
}

fn load_file(config: &Option<PathBuf>, allowed: &[&str]) -> CliResult<BTreeMap<String, String>> {
    match config {
        Some(path) => read_config_file(path, allowed),
        None => Ok(BTreeMap::new()),
    }
}

pub struct CommonArgs {
    pub config: Option<PathBuf>,
    pub out_dir: PathBuf,
}

// ---- spectra ----

pub struct SpectraArgs {
    pub common: CommonArgs,
    pub model: Option<String>,
    pub length: Option<String>,
    pub theta: Option<String>,
    pub window: Option<String>,
    pub truncation: Option<String>,
}

pub fn run_spectra(args: SpectraArgs) -> CliResult<()> {
    let start = Instant::now();
    const KEYS: &[&str] = &["model", "length", "theta", "window", "truncation"];
    let file = load_file(&args.common.config, KEYS)?;
    let mut cfg = RunConfig::new("spectra", args.common.out_dir.clone());

    let model = resolve(args.model.as_deref(), &file, "model").unwrap_or("momentum").to_string();
    let window = parse_range(
        resolve(args.window.as_deref(), &file, "window")
            .ok_or_else(|| CliError::Usage("missing required --window lo:hi".into()))?,
    )?;
    let theta_raw = get_f64(&file, args.theta.as_deref(), "theta")?.unwrap_or(0.0);
    cfg.set("model", &model);
    cfg.set("window", format!("{}:{}", window.lo, window.hi));
    let theta = normalize_theta(theta_raw, &mut cfg);
    cfg.set("theta", theta);

    let family = match model.as_str() {
        "momentum" => {
            let length = get_f64(&file, args.length.as_deref(), "length")?.unwrap_or(1.0);
            require_positive_length(length)?;
            cfg.set("length", length);
            ExtensionFamily::Momentum(MomentumIntervalModel::new(length)?)
        }
        "laguerre" => {
            let truncation =
                get_usize(&file, args.truncation.as_deref(), "truncation")?.unwrap_or(2000);
            cfg.set("truncation", truncation);
            ExtensionFamily::Laguerre(LaguerreSecondOrderModel::new(truncation)?)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown model '{other}' (expected momentum or laguerre)"
            )))
        }
    };

    let spectrum = spectrum_of(&family, theta, Interval::new(window.lo, window.hi)?)?;
    let mut csv = CsvWriter::new(&["eigenvalue", "multiplicity"]);
    for (v, m) in spectrum.eigenvalues().iter().zip(spectrum.multiplicities()) {
        csv.row(&[CsvCell::Real(*v), CsvCell::Int(*m as i64)]);
    }
    let artifact = write_artifact(&cfg.out_dir, "spectra.csv", csv.bytes())?;
    write_manifest(&cfg, None, start.elapsed().as_millis(), &[artifact], None)?;
    Ok(())
}

// ---- curve ----

pub struct CurveArgs {
    pub common: CommonArgs,
    pub model: Option<String>,
    pub length: Option<String>,
    pub theta: Option<String>,
    pub t_range: Option<String>,
    pub truncation: Option<String>,
}

pub fn run_curve(args: CurveArgs) -> CliResult<()> {
    let start = Instant::now();
    const KEYS: &[&str] = &["model", "length", "theta", "t-range", "truncation"];
    let file = load_file(&args.common.config, KEYS)?;
    let mut cfg = RunConfig::new("curve", args.common.out_dir.clone());

    let model = resolve(args.model.as_deref(), &file, "model").unwrap_or("momentum").to_string();
    let grid = parse_grid(
        resolve(args.t_range.as_deref(), &file, "t-range")
            .ok_or_else(|| CliError::Usage("missing required --t-range lo:hi:count".into()))?,
    )?;
    let theta_raw = get_f64(&file, args.theta.as_deref(), "theta")?.unwrap_or(0.0);
    cfg.set("model", &model);
    cfg.set("t-range", format!("{}:{}:{}", grid.lo, grid.hi, grid.count));
    let theta = normalize_theta(theta_raw, &mut cfg);
    cfg.set("theta", theta);

    let (family, pad) = match model.as_str() {
        "momentum" => {
            let length = get_f64(&file, args.length.as_deref(), "length")?.unwrap_or(1.0);
            require_positive_length(length)?;
            cfg.set("length", length);
            let m = MomentumIntervalModel::new(length)?;
            let pad = 8.0 * m.spacing();
            (ExtensionFamily::Momentum(m), pad)
        }
        "laguerre" => {
            let truncation =
                get_usize(&file, args.truncation.as_deref(), "truncation")?.unwrap_or(2000);
            cfg.set("truncation", truncation);
            // interior spacing of the truncated realization is about 2
            (
                ExtensionFamily::Laguerre(LaguerreSecondOrderModel::new(truncation)?),
                25.0,
            )
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown model '{other}' (expected momentum or laguerre)"
            )))
        }
    };

    let window = Interval::new(grid.lo - pad, grid.hi + pad)?;
    let spectrum = spectrum_of(&family, theta, window)?;
    let curve = curve_samples(
        &spectrum,
        format!("{model} theta={theta}"),
        Interval::new(grid.lo, grid.hi)?,
        grid.count,
    )?;
    let mut csv = CsvWriter::new(&["t", "value"]);
    for (t, v) in &curve.samples {
        csv.row(&[CsvCell::Real(*t), CsvCell::Real(*v)]);
    }
    let artifact = write_artifact(&cfg.out_dir, "curve.csv", csv.bytes())?;
    write_manifest(&cfg, None, start.elapsed().as_millis(), &[artifact], None)?;
    Ok(())
}

// ---- envelope ----

pub struct EnvelopeArgs {
    pub common: CommonArgs,
    pub length: Option<String>,
    pub t_range: Option<String>,
    pub theta_grid: Option<String>,
}

pub fn run_envelope(args: EnvelopeArgs) -> CliResult<()> {
    let start = Instant::now();
    const KEYS: &[&str] = &["length", "t-range", "theta-grid"];
    let file = load_file(&args.common.config, KEYS)?;
    let mut cfg = RunConfig::new("envelope", args.common.out_dir.clone());

    let length = get_f64(&file, args.length.as_deref(), "length")?.unwrap_or(1.0);
    require_positive_length(length)?;
    let grid = match resolve(args.t_range.as_deref(), &file, "t-range") {
        Some(s) => parse_grid(s)?,
        None => GridSpec { lo: 0.0, hi: TAU / length, count: 65 },
    };
    let theta_grid = get_usize(&file, args.theta_grid.as_deref(), "theta-grid")?.unwrap_or(64);
    cfg.set("length", length);
    cfg.set("t-range", format!("{}:{}:{}", grid.lo, grid.hi, grid.count));
    cfg.set("theta-grid", theta_grid);

    let model = MomentumIntervalModel::new(length)?;
    let family = ExtensionFamily::Momentum(model);
    let pad = 8.0 * model.spacing();
    let mut csv = CsvWriter::new(&["t", "envelope"]);
    for i in 0..grid.count {
        let t = grid.lo + (grid.hi - grid.lo) * i as f64 / (grid.count as f64 - 1.0);
        let window = Interval::new(t - pad, t + pad)?;
        csv.row(&[
            CsvCell::Real(t),
            CsvCell::Real(envelope_at(&family, t, theta_grid, window)?),
        ]);
    }
    let artifact = write_artifact(&cfg.out_dir, "envelope.csv", csv.bytes())?;
    write_manifest(&cfg, None, start.elapsed().as_millis(), &[artifact], None)?;
    Ok(())
}

// ---- bracket ----

pub struct BracketArgs {
    pub common: CommonArgs,
    pub length: Option<String>,
    pub truncation: Option<String>,
    pub t: Option<String>,
    pub grid: Option<String>,
}

pub fn run_bracket(args: BracketArgs) -> CliResult<()> {
    let start = Instant::now();
    const KEYS: &[&str] = &["length", "truncation", "t", "grid"];
    let file = load_file(&args.common.config, KEYS)?;
    let mut cfg = RunConfig::new("bracket", args.common.out_dir.clone());

    let length = get_f64(&file, args.length.as_deref(), "length")?.unwrap_or(1.0);
    require_positive_length(length)?;
    let truncation = get_usize(&file, args.truncation.as_deref(), "truncation")?.unwrap_or(256);
    let t = get_f64(&file, args.t.as_deref(), "t")?.unwrap_or(0.0);
    let grid = get_usize(&file, args.grid.as_deref(), "grid")?.unwrap_or(512);
    cfg.set("length", length);
    cfg.set("truncation", truncation);
    cfg.set("t", t);
    cfg.set("grid", grid);

    let model = MomentumIntervalModel::new(length)?;
    let bracket = momentum_uncertainty_bracket(&model, truncation, t, grid)?;
    let mut csv = CsvWriter::new(&[
        "t",
        "lo",
        "hi",
        "raw_lo",
        "raw_hi",
        "raw_half_lo",
        "raw_half_hi",
        "alpha_star",
    ]);
    csv.row(&[
        CsvCell::Real(t),
        CsvCell::Real(bracket.lo),
        CsvCell::Real(bracket.hi),
        CsvCell::Real(bracket.raw.lo),
        CsvCell::Real(bracket.raw.hi),
        CsvCell::Real(bracket.raw_half.lo),
        CsvCell::Real(bracket.raw_half.hi),
        CsvCell::Real(bracket.raw.alpha_star),
    ]);
    let artifact = write_artifact(&cfg.out_dir, "bracket.csv", csv.bytes())?;
    write_manifest(&cfg, None, start.elapsed().as_millis(), &[artifact], None)?;
    Ok(())
}

// ---- verify ----

pub struct VerifyArgs {
    pub common: CommonArgs,
    pub suite: Option<String>,
    pub seed: Option<String>,
    pub threads: Option<String>,
}

/// Returns whether every check passed (drives the process exit status).
pub fn run_verify(args: VerifyArgs) -> CliResult<bool> {
    let start = Instant::now();
    const KEYS: &[&str] = &["suite", "seed", "threads"];
    let file = load_file(&args.common.config, KEYS)?;
    let mut cfg = RunConfig::new("verify", args.common.out_dir.clone());

    let suite = resolve(args.suite.as_deref(), &file, "suite").unwrap_or("all").to_string();
    let seed: u64 = match resolve(args.seed.as_deref(), &file, "seed") {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("malformed seed '{s}'")))?,
        None => 42,
    };
    let requested = get_i64(&file, args.threads.as_deref(), "threads")?.unwrap_or(4);
    if requested < 1 {
        return Err(CliError::Usage(format!(
            "threads must be a positive integer, got {requested}"
        )));
    }
    let cap = crate::config::thread_cap()?;
    let workers = (requested as usize).min(cap.unwrap_or(usize::MAX));
    cfg.set("suite", &suite);
    cfg.set("seed", seed);
    cfg.set("threads", workers);

    let report = run_suite(&suite, seed, workers)?;
    let artifact = write_artifact(&cfg.out_dir, "report.json", report.to_json().as_bytes())?;
    let runtimes: BTreeMap<String, u64> = report.runtimes_ms().into_iter().collect();
    write_manifest(
        &cfg,
        Some(seed),
        start.elapsed().as_millis(),
        &[artifact],
        Some(runtimes),
    )?;
    for check in &report.checks {
        println!("{:?} {}", check.status, check.name);
    }
    Ok(report.overall_pass())
}

// ---- sample ----

pub struct SampleArgs {
    pub common: CommonArgs,
    pub profile: Option<String>,
    pub length: Option<String>,
    pub theta: Option<String>,
    pub k_max: Option<String>,
    pub lambda_range: Option<String>,
    pub convergence: bool,
}

pub fn run_sample(args: SampleArgs) -> CliResult<()> {
    let start = Instant::now();
    const KEYS: &[&str] = &["profile", "length", "theta", "k-max", "lambda-range"];
    let file = load_file(&args.common.config, KEYS)?;
    let mut cfg = RunConfig::new("sample", args.common.out_dir.clone());

    let profile = resolve(args.profile.as_deref(), &file, "profile").unwrap_or("unit").to_string();
    let length = get_f64(&file, args.length.as_deref(), "length")?.unwrap_or(1.0);
    require_positive_length(length)?;
    let theta_raw = get_f64(&file, args.theta.as_deref(), "theta")?.unwrap_or(0.0);
    let k_max = get_i64(&file, args.k_max.as_deref(), "k-max")?.unwrap_or(200);
    if k_max < 1 {
        return Err(CliError::Usage(format!("k-max must be positive, got {k_max}")));
    }
    let grid = match resolve(args.lambda_range.as_deref(), &file, "lambda-range") {
        Some(s) => parse_grid(s)?,
        None => GridSpec { lo: -40.0, hi: 40.0, count: 161 },
    };
    cfg.set("profile", &profile);
    cfg.set("length", length);
    let theta = normalize_theta(theta_raw, &mut cfg);
    cfg.set("theta", theta);
    cfg.set("k-max", k_max);
    cfg.set("lambda-range", format!("{}:{}:{}", grid.lo, grid.hi, grid.count));
    cfg.set("convergence", args.convergence);

    let coefficients = match profile.as_str() {
        "unit" => vec![1.0],
        "ramp" => vec![0.0, 1.0],
        other => {
            return Err(CliError::Usage(format!(
                "unknown profile '{other}' (expected unit or ramp)"
            )))
        }
    };
    let g = BandlimitedTestFunction::new(coefficients, length)?;

    let mut csv = CsvWriter::new(&[
        "lambda",
        "reconstructed_re",
        "reconstructed_im",
        "exact_re",
        "exact_im",
        "abs_error",
    ]);
    for i in 0..grid.count {
        let lambda = grid.lo + (grid.hi - grid.lo) * i as f64 / (grid.count as f64 - 1.0);
        let rec = reconstruct(&g, theta, (-k_max, k_max), lambda)?;
        let exact = transform_value(&g, lambda)?;
        csv.row(&[
            CsvCell::Real(lambda),
            CsvCell::Real(rec.re),
            CsvCell::Real(rec.im),
            CsvCell::Real(exact.re),
            CsvCell::Real(exact.im),
            CsvCell::Real((rec - exact).norm()),
        ]);
    }
    let mut artifacts = vec![write_artifact(&cfg.out_dir, "sample.csv", csv.bytes())?];

    if args.convergence {
        let lambdas: Vec<f64> = (0..grid.count)
            .map(|i| grid.lo + (grid.hi - grid.lo) * i as f64 / (grid.count as f64 - 1.0))
            .collect();
        let mut conv = CsvWriter::new(&["k_max", "sup_error", "rms_error"]);
        let mut k = 25.min(k_max);
        while k <= k_max {
            let (sup, rms) = reconstruction_error(&g, theta, (-k, k), &lambdas)?;
            conv.row(&[CsvCell::Int(k), CsvCell::Real(sup), CsvCell::Real(rms)]);
            if k == k_max {
                break;
            }
            k = (k * 2).min(k_max);
        }
        artifacts.push(write_artifact(
            &cfg.out_dir,
            "sample_convergence.csv",
            conv.bytes(),
        )?);
    }
    write_manifest(&cfg, None, start.elapsed().as_millis(), &artifacts, None)?;
    Ok(())
}
