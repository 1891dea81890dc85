//! Experiment runner: builds/caches sieve tables and zeta curves, executes
//! the moment and probe experiments, and emits JSON + CSV reports.
//!
//! Every run gets a deterministic id (hash of the resolved configuration and
//! seed) that prefixes its report files; the CSV ledger is append-only. Exit
//! status: 0 on success, 1 on computation or postcondition failure, 2 on
//! configuration errors, 3 on resource-limit errors.

mod config;
mod run;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "ntmoments", version, about = "Number-theoretic error terms and short-interval moment experiments", long_about = None)]
pub struct Cli {
    /// Optional TOML config file; command-line flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Cache directory for sieve tables and zeta curves
    /// (default: $NTMC_CACHE_DIR or ./ntmc-cache).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Output directory for reports (default: ./reports).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for experiments that sample (default 1).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build (and cache) a sieve table.
    Sieve(SieveArgs),
    /// Evaluate an error term at given points or on a half-integer sweep.
    Delta(DeltaArgs),
    /// Build (and cache) the E(T) curve on a range.
    Ecurve(EcurveArgs),
    /// Short-interval second/fourth moment of an error term or of E.
    Moment(MomentArgs),
    /// Two-sided numerical check of the Jutila identity.
    Jutila(JutilaArgs),
    /// Truncated-series RMS error sweep against exact values.
    VoronoiCheck(VoronoiArgs),
    /// Count close quadruples of k-th roots.
    Quadruples(QuadruplesArgs),
    /// Scan large values of |zeta(1/2+it)| and report the peak-count bound.
    LargeValues(LargeValuesArgs),
    /// Least-squares fit of a square-summatory function.
    FitSummatory(FitArgs),
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    /// d | r | tau
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    /// delta | delta-star | circle | cusp
    #[arg(long)]
    pub kind: Option<String>,
    /// Evaluation points (repeatable).
    #[arg(long = "x")]
    pub points: Vec<f64>,
    /// Half-integer sweep range (emits CSV).
    #[arg(long)]
    pub sweep_lo: Option<u64>,
    #[arg(long)]
    pub sweep_hi: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EcurveArgs {
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub order: Option<u8>,
    #[arg(long)]
    pub cutoff: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    /// delta | circle | cusp | e
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long = "T")]
    pub t: Option<u64>,
    /// Shift values (repeatable; more than one triggers a fit).
    #[arg(long = "U")]
    pub u: Vec<u64>,
    /// Moment order: 2 (difference squared) or 4 (symmetric fourth).
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct JutilaArgs {
    #[arg(long = "T")]
    pub t: Option<u64>,
    #[arg(long = "H")]
    pub h: Option<u64>,
    #[arg(long = "U")]
    pub u: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VoronoiArgs {
    /// delta | delta-star | circle | cusp
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub x_lo: Option<f64>,
    #[arg(long)]
    pub x_hi: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Truncation lengths (repeatable, ascending).
    #[arg(long = "terms")]
    pub terms: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct QuadruplesArgs {
    /// Range parameter (repeatable).
    #[arg(long = "N")]
    pub n: Vec<u64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LargeValuesArgs {
    #[arg(long = "T")]
    pub t: Option<f64>,
    #[arg(long = "V")]
    pub v: Option<f64>,
    #[arg(long)]
    pub k: Option<u32>,
    /// The constant in G = A(V/log T)^2.
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long)]
    pub grid_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// d | r | tau
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub x_lo: Option<f64>,
    #[arg(long)]
    pub x_hi: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.status())
        }
    }
}
