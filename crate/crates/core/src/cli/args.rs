use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::discrete::BarrierShape;
use crate::record::Method;

#[derive(Parser, Debug)]
#[command(name = "tunnelgap", version, about = "Minimum gap solvers and scaling diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum gap for one (n, alpha, method).
    Gap(Options),
    /// Minimum gaps over a log-spaced n grid and a list of alphas.
    Sweep(Options),
    /// Power-law or stretched-exponential fits of a gap series, per bin.
    Fit(Options),
    /// Derivative ratio R = f''/f' of a gap series.
    Ratio(Options),
    /// Size n at which continuous / leading-order gap reaches v.
    Threshold(Options),
    /// Dataset and manifest for one figure pipeline.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ReproduceArgs {
    /// Figure pipeline to run (same as `--figure`).
    #[arg(value_enum, id = "figure_name", value_name = "FIGURE")]
    pub figure: Option<Figure>,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl Figure {
    pub fn name(&self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// How grid points become problem sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NPolicy {
    /// Real-valued log grid, used as is.
    Exact,
    /// Log grid rounded to integers, duplicates dropped.
    Round,
    /// Integers where the floor of the barrier width increments.
    Transitions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitKind {
    Power,
    Exponential,
}

/// Flags shared by every subcommand. Values left unset fall back to the
/// `--config` file, then to built-in defaults.
#[derive(Args, Debug, Clone, Default, PartialEq)]
pub struct Options {
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Comma list; entries may be ranges `lo..hi` or `lo..hi:step` (step 0.01).
    #[arg(long)]
    pub alphas: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<f64>,
    #[arg(long)]
    pub nmin: Option<f64>,
    #[arg(long)]
    pub nmax: Option<f64>,
    #[arg(long)]
    pub points_per_decade: Option<u32>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub barrier: Option<BarrierShape>,
    #[arg(long)]
    pub height_coeff: Option<f64>,
    #[arg(long)]
    pub width_coeff: Option<f64>,
    #[arg(long)]
    pub digits: Option<u32>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    /// Output file (gap, sweep, fit, ratio, threshold) or directory (reproduce).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plain-text `key = value` file; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Also print the large-n limit of R.
    #[arg(long)]
    pub target: bool,
    /// Comma list of target ratios in (0, 1).
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long, value_enum)]
    pub figure: Option<Figure>,
    #[arg(long, value_enum)]
    pub n_policy: Option<NPolicy>,
    /// Largest n accepted for the discrete method.
    #[arg(long)]
    pub discrete_cap: Option<f64>,
    /// Gap series CSV for fit and ratio.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Comma list of `lo:hi` n ranges; default is one bin per decade.
    #[arg(long)]
    pub bins: Option<String>,
    #[arg(long, value_enum)]
    pub model: Option<FitKind>,
}
