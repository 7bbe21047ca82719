//! Figure pipelines. Each writes `<fig>.csv` with columns `series,x,y` and
//! `<fig>.manifest.json` into the `--out` directory (default `.`).
//!
//! | figure | x     | y            | series                                   |
//! |--------|-------|--------------|------------------------------------------|
//! | fig1   | alpha | fitted p     | discrete binomial barrier, one per bin   |
//! | fig2   | alpha | fitted p     | continuous gap, one per bin              |
//! | fig3   | n     | gap          | discrete, continuous, asymptotic1        |
//! | fig4   | n     | gap          | fig3 plus asymptotic2                    |
//! | fig5   | alpha | threshold n  | one per target ratio v                   |
//! | fig6   | n     | R            | continuous, asymptotic1, target          |
//! | fig7   | n     | R            | continuous, target                       |
//!
//! fig1 and fig2 also carry an `asymptotic` series with `p = 2 alpha - 1/2`.

use std::collections::BTreeMap;
use std::ffi::CStr;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    binned_power_fits, decade_bins, derivative_ratio, log_grid, FitModel, ScalingSeries,
};
use crate::asymptotic::ratio_target;
use crate::continuous::ContinuousModel;
use crate::discrete::{width_transitions, BarrierShape};
use crate::error::Error;
use crate::record::{GapRecord, Method};

use super::args::{Figure, OutputFormat, Options};
use super::commands::{threshold_for, THRESHOLD_N_MAX};
use super::output::write_table;
use super::sweep::{compute_gap, GapSettings};
use super::{parse_bins, parse_number_list, CliError, EXIT_OK};

pub const FIGURE_COLUMNS: [&str; 3] = ["series", "x", "y"];
/// Default discrete truncation for reproduce runs.
pub const REPRODUCE_DISCRETE_CAP: f64 = 1e4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureRow {
    pub series: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    /// Options given on the command line or in a config file.
    pub flags: BTreeMap<String, String>,
    /// Built-in values used for everything else.
    pub defaults: BTreeMap<String, String>,
    pub versions: BTreeMap<String, String>,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

/// Option values with per-figure defaults; records which defaults were used.
struct Params<'a> {
    options: &'a Options,
    defaults: BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn new(options: &'a Options) -> Self {
        Self {
            options,
            defaults: BTreeMap::new(),
        }
    }

    fn pick<T: ToString + Copy>(&mut self, key: &str, given: Option<T>, default: T) -> T {
        given.unwrap_or_else(|| {
            self.defaults.insert(key.to_string(), default.to_string());
            default
        })
    }

    fn list(&mut self, key: &str, given: Option<&String>, default: &str) -> Result<Vec<f64>, CliError> {
        match given {
            Some(text) => parse_number_list(text),
            None => {
                self.defaults.insert(key.to_string(), default.to_string());
                parse_number_list(default)
            }
        }
    }

    fn alphas(&mut self, default: &str) -> Result<Vec<f64>, CliError> {
        match (&self.options.alphas, self.options.alpha) {
            (Some(list), _) => parse_number_list(list),
            (None, Some(a)) => Ok(vec![a]),
            (None, None) => self.list("alphas", None, default),
        }
    }

    fn settings(&mut self, barrier: BarrierShape) -> GapSettings {
        let d = GapSettings::default();
        let o = self.options;
        GapSettings {
            barrier: self.pick("barrier", o.barrier, barrier),
            height_coeff: self.pick("height-coeff", o.height_coeff, d.height_coeff),
            width_coeff: self.pick("width-coeff", o.width_coeff, d.width_coeff),
            omega: self.pick("omega", o.omega, d.omega),
            c: self.pick("c", o.c, d.c),
            digits: self.pick("digits", o.digits, d.digits),
        }
    }

    fn grid(&mut self, n_min: f64, n_max: f64) -> Result<(f64, f64, u32), CliError> {
        let lo = self.pick("nmin", self.options.nmin, n_min);
        let hi = self.pick("nmax", self.options.nmax, n_max);
        let ppd = self.pick("points-per-decade", self.options.points_per_decade, 16);
        if !(lo > 0.0 && hi > lo) {
            return Err(CliError::usage(format!("need 0 < nmin < nmax, got {lo} and {hi}")));
        }
        Ok((lo, hi, ppd))
    }

    fn bins(&self, series: &ScalingSeries) -> Result<Vec<(f64, f64)>, CliError> {
        match &self.options.bins {
            Some(text) => parse_bins(text),
            None => Ok(decade_bins(series)),
        }
    }
}

/// Gaps for every `(alpha, n)` cell, in input order. The first failing cell
/// (in that order) decides the error.
fn gaps(
    method: Method,
    cells: &[(f64, f64)],
    settings: &GapSettings,
) -> Result<Vec<GapRecord>, CliError> {
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(alpha, n)| compute_gap(method, n, alpha, settings))
        .collect();
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn check_continuous(alphas: &[f64], n_min: f64) -> Result<(), CliError> {
    for &alpha in alphas {
        ContinuousModel::new(n_min, alpha)?.check_tunneling()?;
    }
    Ok(())
}

fn cells(alphas: &[f64], ns: &[f64]) -> Vec<(f64, f64)> {
    alphas
        .iter()
        .flat_map(|&a| ns.iter().map(move |&n| (a, n)))
        .collect()
}

fn label(what: &str, alpha: f64) -> String {
    format!("{what} alpha={alpha}")
}

/// First barrier-width transition at or after each log-grid point.
fn thinned_transitions(
    settings: &GapSettings,
    alpha: f64,
    n_min: f64,
    n_max: f64,
    ppd: u32,
) -> Result<Vec<f64>, CliError> {
    let spec = settings.barrier_spec(alpha)?;
    let all = width_transitions(&spec, n_min.ceil() as u64, n_max.floor() as u64);
    let mut out: Vec<f64> = Vec::new();
    for g in log_grid(n_min, n_max, ppd)? {
        if let Some(&n) = all.iter().find(|&&n| n as f64 >= g) {
            let n = n as f64;
            if out.last() != Some(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

fn binned_exponent_rows(
    params: &Params,
    alphas: &[f64],
    records: &[GapRecord],
) -> Result<Vec<FigureRow>, CliError> {
    let mut by_bin: BTreeMap<usize, (String, Vec<FigureRow>)> = BTreeMap::new();
    for &alpha in alphas {
        let own: Vec<GapRecord> = records.iter().filter(|r| r.alpha() == alpha).cloned().collect();
        let series = ScalingSeries::from_records(&own).map_err(CliError::from_input_error)?;
        let bins = params.bins(&series)?;
        let fits = binned_power_fits(&series, &bins).map_err(CliError::from_input_error)?;
        for (i, (bin, fit)) in bins.iter().zip(&fits).enumerate() {
            let FitModel::Power { p, .. } = fit.model else {
                unreachable!("power fit")
            };
            by_bin
                .entry(i)
                .or_insert_with(|| (format!("n={:e}..{:e}", bin.0, bin.1), Vec::new()))
                .1
                .push(FigureRow {
                    series: String::new(),
                    x: alpha,
                    y: p,
                });
        }
    }
    let mut rows = Vec::new();
    for (_, (name, points)) in by_bin {
        rows.extend(points.into_iter().map(|r| FigureRow {
            series: name.clone(),
            ..r
        }));
    }
    rows.extend(alphas.iter().map(|&a| FigureRow {
        series: "asymptotic".into(),
        x: a,
        y: 2.0 * a - 0.5,
    }));
    Ok(rows)
}

fn fig_trough(params: &mut Params, method: Method) -> Result<Vec<FigureRow>, CliError> {
    let alphas = params.alphas(if method == Method::Discrete {
        "0.26..0.32:0.02"
    } else {
        "0.26..0.32"
    })?;
    let records = if method == Method::Discrete {
        let settings = params.settings(BarrierShape::Binomial);
        let (lo, hi, ppd) = params.grid(1e2, 1e4)?;
        let cap = params.pick("discrete-cap", params.options.discrete_cap, REPRODUCE_DISCRETE_CAP);
        if hi > cap {
            return Err(CliError::usage(format!("nmax {hi} exceeds the discrete cap {cap}")));
        }
        let mut all = Vec::new();
        for &a in &alphas {
            all.extend(thinned_transitions(&settings, a, lo, hi, ppd)?.into_iter().map(|n| (a, n)));
        }
        gaps(method, &all, &settings)?
    } else {
        let settings = params.settings(BarrierShape::Square);
        let (lo, hi, ppd) = params.grid(1e3, 1e6)?;
        check_continuous(&alphas, lo)?;
        gaps(method, &cells(&alphas, &log_grid(lo, hi, ppd)?), &settings)?
    };
    binned_exponent_rows(params, &alphas, &records)
}

fn fig_comparison(params: &mut Params, second_order: bool) -> Result<Vec<FigureRow>, CliError> {
    let alphas = params.alphas("0.3")?;
    let settings = params.settings(BarrierShape::Square);
    let (lo, hi, ppd) = params.grid(1e3, if second_order { 1e13 } else { 1e5 })?;
    let cap = params.pick("discrete-cap", params.options.discrete_cap, REPRODUCE_DISCRETE_CAP);
    check_continuous(&alphas, lo)?;
    let grid = log_grid(lo, hi, ppd)?;
    let mut discrete_ns: Vec<f64> = grid.iter().filter(|&&n| n <= cap).map(|n| n.round()).collect();
    discrete_ns.dedup();

    let mut methods = vec![Method::Discrete, Method::Continuous, Method::Asymptotic1];
    if second_order {
        methods.push(Method::Asymptotic2);
    }
    let mut rows = Vec::new();
    for method in methods {
        let ns = if method == Method::Discrete { &discrete_ns } else { &grid };
        for r in gaps(method, &cells(&alphas, ns), &settings)? {
            rows.push(FigureRow {
                series: label(method.as_str(), r.alpha()),
                x: r.n(),
                y: r.gap(),
            });
        }
    }
    Ok(rows)
}

fn fig_threshold(params: &mut Params) -> Result<Vec<FigureRow>, CliError> {
    let alphas = params.alphas("0.26..0.32")?;
    let vs = match &params.options.v {
        Some(text) => parse_number_list(text)?,
        None => params.list("v", None, "0.5,0.8,0.9")?,
    };
    let settings = params.settings(BarrierShape::Square);
    let n_hi = params.pick("nmax", params.options.nmax, THRESHOLD_N_MAX);
    let n_lo = params.options.nmin;
    let mut rows = Vec::new();
    for &v in &vs {
        for &alpha in &alphas {
            match threshold_for(alpha, v, n_lo, Some(n_hi), &settings) {
                Ok(n) => rows.push(FigureRow {
                    series: format!("v={v}"),
                    x: alpha,
                    y: n,
                }),
                Err(e @ (Error::Bracket(_) | Error::NonMonotone(_))) => eprintln!(
                    "tunnelgap: warning: no threshold for alpha={alpha}, v={v}: {e}"
                ),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(rows)
}

fn fig_ratio(params: &mut Params, exponential: bool) -> Result<Vec<FigureRow>, CliError> {
    let alphas = params.alphas(if exponential { "0.36,0.4,0.45" } else { "0.27,0.29,0.31,0.34" })?;
    let settings = params.settings(BarrierShape::Square);
    let (lo, hi, ppd) = params.grid(if exponential { 1e2 } else { 1e3 }, 1e10)?;
    check_continuous(&alphas, lo)?;
    let grid = log_grid(lo, hi, ppd)?;
    let mut methods = vec![Method::Continuous];
    if exponential {
        methods.push(Method::Asymptotic1);
    }
    let mut rows = Vec::new();
    for method in methods {
        let records = gaps(method, &cells(&alphas, &grid), &settings)?;
        for &alpha in &alphas {
            let own: Vec<GapRecord> = records.iter().filter(|r| r.alpha() == alpha).cloned().collect();
            let series = ScalingSeries::from_records(&own).map_err(CliError::from_input_error)?;
            let ratio = derivative_ratio(&series).map_err(CliError::from_input_error)?;
            rows.extend(ratio.points.iter().map(|p| FigureRow {
                series: label(method.as_str(), alpha),
                x: p.n,
                y: p.r,
            }));
        }
    }
    for &alpha in &alphas {
        let target = ratio_target(alpha)?;
        rows.extend(grid[1..grid.len() - 1].iter().map(|&n| FigureRow {
            series: label("target", alpha),
            x: n,
            y: target,
        }));
    }
    Ok(rows)
}

pub fn figure_rows(figure: Figure, options: &Options) -> Result<(Vec<FigureRow>, BTreeMap<String, String>), CliError> {
    let mut params = Params::new(options);
    let rows = match figure {
        Figure::Fig1 => fig_trough(&mut params, Method::Discrete)?,
        Figure::Fig2 => fig_trough(&mut params, Method::Continuous)?,
        Figure::Fig3 => fig_comparison(&mut params, false)?,
        Figure::Fig4 => fig_comparison(&mut params, true)?,
        Figure::Fig5 => fig_threshold(&mut params)?,
        Figure::Fig6 => fig_ratio(&mut params, true)?,
        Figure::Fig7 => fig_ratio(&mut params, false)?,
    };
    Ok((rows, params.defaults))
}

fn mpfr_version() -> String {
    // SAFETY: mpfr_get_version returns a pointer to a static NUL-terminated string.
    unsafe { CStr::from_ptr(gmp_mpfr_sys::mpfr::get_version()) }
        .to_string_lossy()
        .into_owned()
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        })
}

pub fn build_manifest(figure: Figure, options: &Options, defaults: BTreeMap<String, String>) -> Manifest {
    let mut versions = BTreeMap::new();
    versions.insert("tunnelgap".to_string(), env!("CARGO_PKG_VERSION").to_string());
    versions.insert("mpfr".to_string(), mpfr_version());
    Manifest {
        command: format!("reproduce {}", figure.name()),
        flags: options.to_flag_map(),
        defaults,
        versions,
        timestamp: timestamp(),
    }
}

pub fn cmd_reproduce(figure: Figure, options: Options) -> Result<i32, CliError> {
    let (rows, defaults) = figure_rows(figure, &options)?;
    let dir = options.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(CliError::io)?;
    write_table(
        &FIGURE_COLUMNS,
        &rows,
        OutputFormat::Csv,
        Some(&dir.join(format!("{}.csv", figure.name()))),
    )?;
    let manifest = build_manifest(figure, &options, defaults);
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::new(super::EXIT_INPUT, "io", e.to_string()))?;
    std::fs::write(dir.join(format!("{}.manifest.json", figure.name())), text + "\n")
        .map_err(CliError::io)?;
    Ok(EXIT_OK)
}
