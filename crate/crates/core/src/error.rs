use thiserror::Error;

/// Errors raised by the gap solvers and the scaling analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported regime: {0}")]
    Regime(String),

    #[error("no root found: {0}")]
    NoRoot(String),

    #[error("precision ceiling reached: {needed} digits requested, cap is {cap}")]
    PrecisionCeiling { needed: u32, cap: u32 },

    #[error("alpha = {0} lies on a region boundary (1/4 or 1/3)")]
    Boundary(f64),

    #[error("second-order gap is non-positive at n = {n} (expansion not valid there)")]
    NegativeGap { n: f64 },

    #[error("bins with fewer than 2 points: {}", format_bins(.0))]
    EmptyBin(Vec<(f64, f64)>),

    #[error("grid is not uniform in ln n: {0}")]
    NonUniformGrid(String),

    #[error("threshold not bracketed: {0}")]
    Bracket(String),

    #[error("ratio is not monotone on the bracket: {0}")]
    NonMonotone(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable lowercase name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Convergence(_) => "convergence",
            Error::Degenerate(_) => "degenerate",
            Error::Regime(_) => "regime",
            Error::NoRoot(_) => "no_root",
            Error::PrecisionCeiling { .. } => "precision_ceiling",
            Error::Boundary(_) => "boundary",
            Error::NegativeGap { .. } => "negative_gap",
            Error::EmptyBin(_) => "empty_bin",
            Error::NonUniformGrid(_) => "non_uniform_grid",
            Error::Bracket(_) => "bracket",
            Error::NonMonotone(_) => "non_monotone",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

fn format_bins(bins: &[(f64, f64)]) -> String {
    bins.iter()
        .map(|(lo, hi)| format!("[{lo:e}, {hi:e}]"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
