use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, Overrides};
use crate::error::EXIT_CODES_HELP;

#[derive(Debug, Parser)]
#[command(
    name = "horoperiod",
    version,
    about = "Half-periods, periodic solutions and solution counts for the horospherical p-Minkowski equation on the circle",
    after_help = EXIT_CODES_HELP
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output encoding.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// `key = value` config file; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for scans (overrides HOROPERIOD_THREADS).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Quadrature refinement tolerance.
    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,
    /// ODE relative tolerance.
    #[arg(long, global = true)]
    pub ode_rtol: Option<f64>,
    /// ODE absolute tolerance.
    #[arg(long, global = true)]
    pub ode_atol: Option<f64>,
    /// Tolerance on ln(E - E*) when locating branches.
    #[arg(long, global = true)]
    pub root_tol: Option<f64>,
    /// Samples per solution profile.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid: Option<u64>,
    /// Classifier E-scan points per decade of E - E*.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub points_per_decade: Option<u64>,
}

impl GlobalArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            format: self.format,
            output: self.output.clone(),
            workers: self.workers.map(|n| n as usize),
            quad_tol: self.quad_tol,
            ode_rtol: self.ode_rtol,
            ode_atol: self.ode_atol,
            root_tol: self.root_tol,
            grid: self.grid.map(|n| n as usize),
            points_per_decade: self.points_per_decade.map(|n| n as usize),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Half-period Theta, from (gamma, E) or from shape coordinates (alpha, r).
    #[command(allow_negative_numbers = true)]
    Period(PeriodArgs),
    /// Build and certify the m-fold solution (smallest E), or re-check a saved one.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Constant roots and non-constant branches for one (p, q, gamma).
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Explicit gamma thresholds over a p grid.
    #[command(allow_negative_numbers = true)]
    Thresholds(ThresholdArgs),
    /// Classify every point of a (p, q, gamma) grid.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Constant solutions.
    #[command(allow_negative_numbers = true)]
    Constants(ConstantArgs),
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Energy level (with --gamma).
    #[arg(long = "E")]
    pub energy: Option<f64>,
    /// Shape coordinate alpha = 1/(u+ u-) (with --r).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Shape coordinate r = u+/u- (with --alpha).
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Fold symmetry, at least 2.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub m: Option<u32>,
    /// Recompute the certificates of a saved profile instead of solving.
    #[arg(long, conflicts_with_all = ["p", "gamma", "m"])]
    pub verify: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub gamma: f64,
    /// Largest fold symmetry searched.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub m_max: u32,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// p grid: lo:hi:n, a comma list or one value.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub l: u32,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// p grid: lo:hi:n, a comma list or one value.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    /// q grid.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub q: String,
    /// gamma grid.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub m_max: u32,
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub gamma: f64,
}
