//! defspec: spectra of self-adjoint extension families, uncertainty
//! floors, oracle brackets, verification suites, and lattice-sampling
//! experiments.
//!
//! Exit status: 0 success, 2 usage error, 3 numeric error,
//! 4 verification failure.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use commands::{
    run_bracket, run_curve, run_envelope, run_sample, run_spectra, run_verify, BracketArgs,
    CommonArgs, CurveArgs, EnvelopeArgs, SampleArgs, SpectraArgs, VerifyArgs,
};
use config::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "defspec",
    version,
    about = "Numerics for symmetric operators with finitely-bounded uncertainty"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// Flat key = value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory receiving artifacts and manifest.json
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

impl CommonFlags {
    fn into_common(self) -> CommonArgs {
        CommonArgs { config: self.config, out_dir: self.out_dir }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of one extension inside a window
    Spectra {
        #[command(flatten)]
        common: CommonFlags,
        /// momentum or laguerre
        #[arg(long)]
        model: Option<String>,
        /// Interval length L (momentum)
        #[arg(long, allow_hyphen_values = true)]
        length: Option<String>,
        /// Extension parameter in [0, 2pi); out-of-range values are reduced
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Window lo:hi
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Basis truncation (laguerre)
        #[arg(long)]
        truncation: Option<String>,
    },
    /// Uncertainty curve of one extension over a t grid
    Curve {
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long)]
        model: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        length: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// t grid lo:hi:count
        #[arg(long = "t-range", allow_hyphen_values = true)]
        t_range: Option<String>,
        #[arg(long)]
        truncation: Option<String>,
    },
    /// Family envelope of the uncertainty curve over a t grid
    Envelope {
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long, allow_hyphen_values = true)]
        length: Option<String>,
        #[arg(long = "t-range", allow_hyphen_values = true)]
        t_range: Option<String>,
        /// Coarse theta grid size before refinement
        #[arg(long = "theta-grid")]
        theta_grid: Option<String>,
    },
    /// Truncation-oracle bracket of the minimum uncertainty at one t
    Bracket {
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long, allow_hyphen_values = true)]
        length: Option<String>,
        #[arg(long)]
        truncation: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Dual-scan grid points
        #[arg(long)]
        grid: Option<String>,
    },
    /// Verification suites emitting report.json
    Verify {
        #[command(flatten)]
        common: CommonFlags,
        /// all, bound, counting, curve, floor, laguerre, overlap, probe,
        /// sampling, unequal
        #[arg(long)]
        suite: Option<String>,
        /// Master seed for every random sweep
        #[arg(long)]
        seed: Option<String>,
        /// Worker threads (capped by DEFSPEC_THREADS)
        #[arg(long)]
        threads: Option<String>,
    },
    /// Lattice-sampling reconstruction experiment
    Sample {
        #[command(flatten)]
        common: CommonFlags,
        /// unit or ramp
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        length: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Series window: |k| <= k-max
        #[arg(long = "k-max")]
        k_max: Option<String>,
        /// lambda grid lo:hi:count
        #[arg(long = "lambda-range", allow_hyphen_values = true)]
        lambda_range: Option<String>,
        /// Also emit a window-doubling convergence table
        #[arg(long)]
        convergence: bool,
    },
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Spectra { common, model, length, theta, window, truncation } => {
            run_spectra(SpectraArgs {
                common: common.into_common(),
                model,
                length,
                theta,
                window,
                truncation,
            })?;
            Ok(true)
        }
        Command::Curve { common, model, length, theta, t_range, truncation } => {
            run_curve(CurveArgs {
                common: common.into_common(),
                model,
                length,
                theta,
                t_range,
                truncation,
            })?;
            Ok(true)
        }
        Command::Envelope { common, length, t_range, theta_grid } => {
            run_envelope(EnvelopeArgs {
                common: common.into_common(),
                length,
                t_range,
                theta_grid,
            })?;
            Ok(true)
        }
        Command::Bracket { common, length, truncation, t, grid } => {
            run_bracket(BracketArgs {
                common: common.into_common(),
                length,
                truncation,
                t,
                grid,
            })?;
            Ok(true)
        }
        Command::Verify { common, suite, seed, threads } => run_verify(VerifyArgs {
            common: common.into_common(),
            suite,
            seed,
            threads,
        }),
        Command::Sample { common, profile, length, theta, k_max, lambda_range, convergence } => {
            run_sample(SampleArgs {
                common: common.into_common(),
                profile,
                length,
                theta,
                k_max,
                lambda_range,
                convergence,
            })?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed (see report.json)");
            ExitCode::from(4)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
