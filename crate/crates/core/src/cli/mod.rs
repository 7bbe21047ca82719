//! Command-line front end: `gap`, `sweep`, `fit`, `ratio`, `threshold` and
//! `reproduce`.
//!
//! Exit codes: 0 success, 2 usage, 3 solver failure, 4 bad input data,
//! 5 unsupported regime. Failures print one line to stderr:
//! `tunnelgap: error code=<code> kind=<kind>: <message>`.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;
pub mod reproduce;
pub mod sweep;

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

use crate::error::Error;
use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_REGIME: i32 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, kind: &str, message: impl Into<String>) -> Self {
        Self {
            code,
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, "usage", message)
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(EXIT_INPUT, "input", message)
    }

    pub fn io(err: std::io::Error) -> Self {
        Self::new(EXIT_INPUT, "io", err.to_string())
    }

    /// Errors from reading or analysing a user-supplied series.
    pub fn from_input_error(err: Error) -> Self {
        Self::new(EXIT_INPUT, err.kind(), err.to_string())
    }
}

/// Exit code for a library error raised while computing gaps.
pub fn solver_exit_code(err: &Error) -> i32 {
    match err {
        Error::Regime(_) | Error::Boundary(_) => EXIT_REGIME,
        Error::Domain(_) => EXIT_USAGE,
        Error::InvalidInput(_) | Error::NonUniformGrid(_) | Error::EmptyBin(_) => EXIT_INPUT,
        _ => EXIT_SOLVER,
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        Self::new(solver_exit_code(&err), err.kind(), err.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = self.message.replace(['\n', '\r'], " ");
        write!(f, "tunnelgap: error code={} kind={}: {message}", self.code, self.kind)
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.code
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Gap(o) => commands::cmd_gap(resolve(o)?),
        Command::Sweep(o) => commands::cmd_sweep(resolve(o)?),
        Command::Fit(o) => commands::cmd_fit(resolve(o)?),
        Command::Ratio(o) => commands::cmd_ratio(resolve(o)?),
        Command::Threshold(o) => commands::cmd_threshold(resolve(o)?),
        Command::Reproduce(r) => {
            let mut options = resolve(r.options)?;
            let figure = match (r.figure, options.figure) {
                (Some(a), Some(b)) if a != b => {
                    return Err(CliError::usage(format!(
                        "figure given twice: {} and {}",
                        a.name(),
                        b.name()
                    )))
                }
                (Some(f), _) | (None, Some(f)) => f,
                (None, None) => return Err(CliError::usage("reproduce needs a figure (fig1..fig7)")),
            };
            options.figure = None;
            reproduce::cmd_reproduce(figure, options)
        }
    }
}

fn resolve(mut options: args::Options) -> Result<args::Options, CliError> {
    if let Some(path) = options.config.take() {
        options.merge_config(&config::load_config(&path)?)?;
    }
    Ok(options)
}

/// Parses a comma list of numbers and ranges. `lo..hi` steps by `0.01`,
/// `lo..hi:step` by `step`; both ends are inclusive. Values are rounded to
/// 10 decimals so that `0.26..0.32` yields exactly `0.3`.
pub fn parse_number_list(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |item: &str| CliError::usage(format!("cannot parse list item '{item}'"));
    let round = |x: f64| (x * 1e10).round() / 1e10;
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, rest)) = item.split_once("..") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (hi, step.trim().parse::<f64>().map_err(|_| bad(item))?),
                None => (rest, 0.01),
            };
            let lo: f64 = lo.trim().parse().map_err(|_| bad(item))?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad(item))?;
            if !(step > 0.0) || !(hi >= lo) {
                return Err(bad(item));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize;
            out.extend((0..=count).map(|i| round(lo + i as f64 * step)));
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    if out.is_empty() {
        return Err(CliError::usage(format!("empty list '{text}'")));
    }
    Ok(out)
}

/// Parses `lo:hi` pairs separated by commas.
pub fn parse_bins(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (lo, hi) = item
                .split_once(':')
                .ok_or_else(|| CliError::usage(format!("bin '{item}' is not lo:hi")))?;
            let lo: f64 = lo.trim().parse().map_err(|_| CliError::usage(format!("bad bin '{item}'")))?;
            let hi: f64 = hi.trim().parse().map_err(|_| CliError::usage(format!("bad bin '{item}'")))?;
            if !(hi > lo) {
                return Err(CliError::usage(format!("bin '{item}' is empty")));
            }
            Ok((lo, hi))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_lists() {
        assert_eq!(parse_number_list("0.3").unwrap(), vec![0.3]);
        assert_eq!(
            parse_number_list("0.26..0.32").unwrap(),
            vec![0.26, 0.27, 0.28, 0.29, 0.3, 0.31, 0.32]
        );
        assert_eq!(parse_number_list("0.26..0.3:0.02, 0.45").unwrap(), vec![0.26, 0.28, 0.3, 0.45]);
        assert!(parse_number_list("0.3..0.2").is_err());
        assert!(parse_number_list("x").is_err());
        assert!(parse_number_list("").is_err());
    }

    #[test]
    fn bins() {
        assert_eq!(parse_bins("1e2:1e3, 1e3:1e4").unwrap(), vec![(1e2, 1e3), (1e3, 1e4)]);
        assert!(parse_bins("1e3:1e2").is_err());
        assert!(parse_bins("1e3").is_err());
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(solver_exit_code(&Error::Regime("x".into())), EXIT_REGIME);
        assert_eq!(solver_exit_code(&Error::Boundary(0.25)), EXIT_REGIME);
        assert_eq!(solver_exit_code(&Error::NoRoot("x".into())), EXIT_SOLVER);
        assert_eq!(solver_exit_code(&Error::Domain("x".into())), EXIT_USAGE);
        let line = CliError::from(Error::NoRoot("a\nb".into())).to_string();
        assert!(line.starts_with("tunnelgap: error code=3 kind=no_root: "));
        assert!(!line.contains('\n'));
    }
}
