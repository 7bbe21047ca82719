use std::path::Path;

use serde::Serialize;

use crate::analysis::{
    binned_power_fits, continuous_first_order_ratio, decade_bins, derivative_ratio,
    exponential_fit, threshold_n_ratio, FitModel, FitResult, ScalingPoint, ScalingSeries,
};
use crate::asymptotic::{n_threshold_estimate, ratio_target};
use crate::continuous::tunneling_min_n;
use crate::record::Method;

use super::args::{FitKind, Options};
use super::output::{write_table, RecordRow, RECORD_COLUMNS};
use super::sweep::{compute_gap, GapSettings, SweepPlan, SweepRow};
use super::{parse_bins, parse_number_list, solver_exit_code, CliError, EXIT_OK};

/// Default upper end of the threshold search bracket.
pub const THRESHOLD_N_MAX: f64 = 1e30;

fn warn(message: &str) {
    eprintln!("tunnelgap: warning: {message}");
}

pub fn cmd_gap(o: Options) -> Result<i32, CliError> {
    let method = o.method.ok_or_else(|| CliError::usage("--method is required"))?;
    let alpha = o.alpha.ok_or_else(|| CliError::usage("--alpha is required"))?;
    let n = o.n.ok_or_else(|| CliError::usage("--n is required"))?;
    let record = compute_gap(method, n, alpha, &GapSettings::from_options(&o))?;
    let row = SweepRow {
        n,
        alpha,
        method,
        result: Ok(record),
    };
    write_table(
        &RECORD_COLUMNS,
        &[RecordRow::from(&row)],
        o.output.unwrap_or_default(),
        o.out.as_deref(),
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_sweep(o: Options) -> Result<i32, CliError> {
    let plan = SweepPlan::from_options(&o)?;
    let rows = plan.run().map_err(|e| CliError::usage(e.to_string()))?;
    let flat: Vec<RecordRow> = rows.iter().map(RecordRow::from).collect();
    write_table(&RECORD_COLUMNS, &flat, o.output.unwrap_or_default(), o.out.as_deref())?;
    Ok(rows
        .iter()
        .find_map(|r| r.result.as_ref().err())
        .map_or(EXIT_OK, solver_exit_code))
}

/// One `(alpha, method)` group of an input gap table.
#[derive(Debug, Clone)]
pub struct LabelledSeries {
    pub alpha: String,
    pub method: String,
    pub series: ScalingSeries,
}

/// Reads a gap table with at least an `n` column and a `log_gap` or `gap`
/// column. Optional `alpha` and `method` columns split it into groups; rows
/// with a non-empty `error` field are skipped.
pub fn read_series(path: &Path) -> Result<Vec<LabelledSeries>, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(format!("bad header in {}: {e}", path.display())))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let n_col = col("n").ok_or_else(|| CliError::input("input has no 'n' column"))?;
    let (log_col, gap_col) = (col("log_gap"), col("gap"));
    if log_col.is_none() && gap_col.is_none() {
        return Err(CliError::input("input has neither 'log_gap' nor 'gap' column"));
    }
    let (alpha_col, method_col, error_col) = (col("alpha"), col("method"), col("error"));

    let mut groups: Vec<(String, String, Vec<ScalingPoint>)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| CliError::input(format!("line {line}: {e}")))?;
        let field = |c: Option<usize>| c.and_then(|c| record.get(c)).map(str::trim).unwrap_or("");
        if !field(error_col).is_empty() {
            warn(&format!("line {line}: skipping failed row"));
            continue;
        }
        let number = |text: &str, what: &str| -> Result<f64, CliError> {
            text.parse()
                .map_err(|_| CliError::input(format!("line {line}: bad {what} '{text}'")))
        };
        let n = number(field(Some(n_col)), "n")?;
        let log_gap = match (field(log_col), field(gap_col)) {
            ("", "") => return Err(CliError::input(format!("line {line}: no gap value"))),
            ("", g) => {
                let g = number(g, "gap")?;
                if !(g > 0.0) {
                    return Err(CliError::input(format!("line {line}: gap {g} is not positive")));
                }
                g.ln()
            }
            (l, _) => number(l, "log_gap")?,
        };
        let key = (field(alpha_col).to_string(), field(method_col).to_string());
        let point = ScalingPoint { n, log_gap };
        match groups.iter_mut().find(|g| g.0 == key.0 && g.1 == key.1) {
            Some(g) => g.2.push(point),
            None => groups.push((key.0, key.1, vec![point])),
        }
    }
    if groups.is_empty() {
        return Err(CliError::input(format!("{} has no usable rows", path.display())));
    }
    groups
        .into_iter()
        .map(|(alpha, method, points)| {
            let a = alpha.parse().unwrap_or(f64::NAN);
            let m = method.parse().unwrap_or(Method::Continuous);
            let series = ScalingSeries::new(a, m, points).map_err(CliError::from_input_error)?;
            Ok(LabelledSeries {
                alpha,
                method,
                series,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRow {
    pub alpha: String,
    pub method: String,
    pub model: &'static str,
    pub n_lo: f64,
    pub n_hi: f64,
    pub prefactor: f64,
    pub ln_prefactor: f64,
    pub p: Option<f64>,
    pub c: Option<f64>,
    pub q: Option<f64>,
    pub residual: f64,
    pub at_bracket_edge: bool,
}

pub const FIT_COLUMNS: [&str; 12] = [
    "alpha", "method", "model", "n_lo", "n_hi", "prefactor", "ln_prefactor", "p", "c", "q",
    "residual", "at_bracket_edge",
];

impl FitRow {
    fn new(group: &LabelledSeries, bin: (f64, f64), fit: &FitResult) -> Self {
        let (model, prefactor, ln_prefactor, p, c, q) = match fit.model {
            FitModel::Power { a, ln_a, p } => ("power", a, ln_a, Some(p), None, None),
            FitModel::Exponential { b, ln_b, c, q } => ("exponential", b, ln_b, None, Some(c), Some(q)),
        };
        Self {
            alpha: group.alpha.clone(),
            method: group.method.clone(),
            model,
            n_lo: bin.0,
            n_hi: bin.1,
            prefactor,
            ln_prefactor,
            p,
            c,
            q,
            residual: fit.residual,
            at_bracket_edge: fit.at_bracket_edge,
        }
    }
}

pub fn cmd_fit(o: Options) -> Result<i32, CliError> {
    let path = o.input.as_deref().ok_or_else(|| CliError::usage("--input is required"))?;
    let explicit_bins = o.bins.as_deref().map(parse_bins).transpose()?;
    let mut rows = Vec::new();
    for group in read_series(path)? {
        let bins = explicit_bins.clone().unwrap_or_else(|| decade_bins(&group.series));
        if bins.is_empty() {
            return Err(CliError::input("series spans no decade bin; pass --bins"));
        }
        let fits = match o.model.unwrap_or(FitKind::Power) {
            FitKind::Power => binned_power_fits(&group.series, &bins),
            FitKind::Exponential => bins
                .iter()
                .map(|&(lo, hi)| exponential_fit(&group.series.restrict(lo, hi)))
                .collect(),
        }
        .map_err(CliError::from_input_error)?;
        rows.extend(bins.iter().zip(&fits).map(|(&bin, fit)| FitRow::new(&group, bin, fit)));
    }
    write_table(&FIT_COLUMNS, &rows, o.output.unwrap_or_default(), o.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub alpha: String,
    pub method: String,
    pub n: f64,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
}

pub fn cmd_ratio(o: Options) -> Result<i32, CliError> {
    let path = o.input.as_deref().ok_or_else(|| CliError::usage("--input is required"))?;
    let mut rows = Vec::new();
    for group in read_series(path)? {
        let ratio = derivative_ratio(&group.series).map_err(CliError::from_input_error)?;
        if !ratio.omitted.is_empty() {
            warn(&format!(
                "alpha {}: {} points with vanishing slope omitted",
                group.alpha,
                ratio.omitted.len()
            ));
        }
        let target = if o.target {
            let alpha: f64 = group.alpha.parse().map_err(|_| {
                CliError::input(format!("--target needs a numeric alpha column, got '{}'", group.alpha))
            })?;
            Some(ratio_target(alpha).map_err(CliError::from_input_error)?)
        } else {
            None
        };
        rows.extend(ratio.points.iter().map(|p| RatioRow {
            alpha: group.alpha.clone(),
            method: group.method.clone(),
            n: p.n,
            r: p.r,
            target,
        }));
    }
    let header: &[&str] = if o.target {
        &["alpha", "method", "n", "r", "target"]
    } else {
        &["alpha", "method", "n", "r"]
    };
    write_table(header, &rows, o.output.unwrap_or_default(), o.out.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub alpha: f64,
    pub v: f64,
    pub n_threshold: Option<f64>,
    pub n_estimate: Option<f64>,
    pub error: Option<String>,
}

pub const THRESHOLD_COLUMNS: [&str; 5] = ["alpha", "v", "n_threshold", "n_estimate", "error"];

/// Threshold search for one `(alpha, v)` with the default bracket
/// `[tunneling edge, 1e30]` unless `n_lo` / `n_hi` are given.
pub fn threshold_for(
    alpha: f64,
    v: f64,
    n_lo: Option<f64>,
    n_hi: Option<f64>,
    s: &GapSettings,
) -> crate::Result<f64> {
    let prec = s.precision()?;
    let lo = n_lo.unwrap_or_else(|| tunneling_min_n(alpha) * (1.0 + 1e-6));
    let hi = n_hi.unwrap_or(THRESHOLD_N_MAX);
    let ratio = |n: f64| continuous_first_order_ratio(n, alpha, s.omega, s.c, &prec);
    threshold_n_ratio(alpha, v, ratio, lo, hi)
}

pub fn cmd_threshold(o: Options) -> Result<i32, CliError> {
    let alphas = match (&o.alphas, o.alpha) {
        (Some(list), _) => parse_number_list(list)?,
        (None, Some(a)) => vec![a],
        (None, None) => return Err(CliError::usage("--alpha or --alphas is required")),
    };
    let vs = parse_number_list(o.v.as_deref().unwrap_or("0.5"))?;
    let settings = GapSettings::from_options(&o);
    let prec = settings.precision()?;
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for &alpha in &alphas {
        for &v in &vs {
            let result = threshold_for(alpha, v, o.nmin, o.nmax, &settings);
            let estimate = n_threshold_estimate(v, alpha, settings.omega, &prec).ok();
            if let Err(e) = &result {
                if code == EXIT_OK {
                    code = solver_exit_code(e);
                }
            }
            rows.push(ThresholdRow {
                alpha,
                v,
                n_threshold: result.as_ref().ok().copied(),
                n_estimate: estimate,
                error: result.err().map(|e| format!("{}: {}", e.kind(), e)),
            });
        }
    }
    write_table(&THRESHOLD_COLUMNS, &rows, o.output.unwrap_or_default(), o.out.as_deref())?;
    Ok(code)
}
