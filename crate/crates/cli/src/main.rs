//! `mopw`: construct multiple orthogonal polynomials, form their Wronskian
//! and Hankel determinants, certify sign and zero properties, and export
//! complex zeros as CSV.
//!
//! Exit codes: 0 pass, 1 refutation, 2 usage, 3 singular or abnormal index,
//! 4 numerical failure.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "mopw", version, about = "Wronskians of multiple orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command. Each may also come from `--config`.
#[derive(Args, Clone, Default)]
pub struct Common {
    /// JSON file with default values for any option
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Family as JSON, or one of hermite, laguerre1, laguerre2
    #[arg(long)]
    pub family: Option<String>,
    /// Comma-separated rationals c_1,...,c_r
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// alpha_1,...,alpha_r (first kind) or a single alpha (second kind)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Multi-index, e.g. 2,3
    #[arg(long)]
    pub n: Option<String>,
    /// Path length
    #[arg(long)]
    pub l: Option<usize>,
    /// Explicit step directions of the path, e.g. 1,2,1
    #[arg(long)]
    pub steps: Option<String>,
    /// Direction of straight paths and Hankel determinants (1-based)
    #[arg(long)]
    pub dir: Option<usize>,
    /// RNG seed; the MOPW_SEED environment variable takes precedence
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum MethodArg {
    Moments,
    ClosedForm,
    Both,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum SeriesBy {
    L,
    N,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum VariantArg {
    Plain,
    HermiteDiag,
    HermitePair,
    Laguerre1,
    Laguerre2,
}

#[derive(Subcommand)]
enum Command {
    /// Print a type II polynomial (or type I coefficient polynomials)
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Type of the construction (1 or 2)
        #[arg(long = "type")]
        kind: Option<u8>,
    },
    /// Print the Wronskian along a path, or a Turánian with --hankel
    Wronskian {
        #[command(flatten)]
        common: Common,
        /// Sign-normalized Hankel determinant along --dir instead
        #[arg(long)]
        hankel: bool,
        /// Divide by prod_{i<l} i! to get the averaged characteristic moment
        #[arg(long)]
        moments: bool,
        /// Also evaluate at this rational point
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// Run a certification or identity check
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Export complex zeros of Wronskians as CSV (re,im,series)
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        series_by: Option<SeriesBy>,
        /// Path lengths to sweep, e.g. 2,4,6
        #[arg(long)]
        ls: Option<String>,
        /// Start indices to sweep, separated by ';', e.g. "2,3;3,4"
        #[arg(long)]
        ns: Option<String>,
        /// Relative residual tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Output file (default stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum VerifyCommand {
    /// Wronskian positive on R for every path (l even)
    Theorem1 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exactly |n| simple real zeros and strict interlacing (l odd)
    Theorem2 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Grid sign of the type I Wronskian (numerical, heuristic)
    Theorem3 {
        #[command(flatten)]
        common: Common,
        /// lo,hi,count
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Certify a Turán-type expression on its domain
    Turan {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Wronskian along e_j equals (-2)^{l(l-1)/2} times the Hankel determinant
    HankelId {
        #[command(flatten)]
        common: Common,
    },
    /// Wronskian independent of the path
    PathFree {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Confluent Vandermonde limit residuals shrink linearly
    Confluent {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Comma-separated positive rationals
        #[arg(long)]
        eps: Option<String>,
    },
    /// Randomized AT-system probe
    AtProbe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Raising relations agree with direct construction
    Raising {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: msg.into(),
        }
    }
}

impl From<mopw_core::Error> for CliError {
    fn from(e: mopw_core::Error) -> Self {
        use mopw_core::Error as E;
        let code = match e {
            E::NotNormal(_) => 3,
            E::Numerical(_) | E::NoConvergence { .. } => 4,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command produced: text for stdout and whether it passed.
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Construct { common, method, kind } => commands::construct(&common, method, kind),
        Command::Wronskian {
            common,
            hankel,
            moments,
            z,
        } => commands::wronskian(&common, hankel, moments, z),
        Command::Verify { check } => commands::verify(check),
        Command::Roots {
            common,
            series_by,
            ls,
            ns,
            tol,
            out,
        } => commands::roots(&common, series_by, ls, ns, tol, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("mopw: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
