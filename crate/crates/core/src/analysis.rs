//! Scaling diagnostics for `g_min(n)` series.
//!
//! All operations work on `f = ln g_min` against `x = ln n`. A power law
//! `g = A n^-p` is the line `f = ln A - p x`; a stretched exponential
//! `g = B exp(-C n^q)` is `f = ln B - C e^{qx}`. The derivative ratio
//! `R = f''/f'` is zero for the former and exactly `q` for the latter.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotic::{classify_region, log_gap_first_order, Region};
use crate::continuous::continuous_gap;
use crate::error::{Error, Result};
use crate::optimize::golden_section;
use crate::record::{GapRecord, Method};
use crate::specfun::PrecisionPolicy;

/// `|f'|` below which a ratio point is dropped.
pub const SLOPE_FLOOR: f64 = 1e-12;
/// Allowed relative deviation between consecutive `ln n` spacings.
pub const GRID_REL_TOL: f64 = 1e-9;
pub const EXP_Q_RANGE: (f64, f64) = (0.01, 1.0);
pub const DEFAULT_POINTS_PER_DECADE: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub n: f64,
    pub log_gap: f64,
}

/// Gap samples for one `(alpha, method)`, ordered by strictly increasing `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSeries {
    alpha: f64,
    method: Method,
    points: Vec<ScalingPoint>,
}

impl ScalingSeries {
    pub fn new(alpha: f64, method: Method, points: Vec<ScalingPoint>) -> Result<Self> {
        for p in &points {
            if !(p.n > 0.0 && p.n.is_finite()) || !p.log_gap.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "series point (n = {}, ln g = {}) is not usable",
                    p.n, p.log_gap
                )));
            }
        }
        if let Some(w) = points.windows(2).find(|w| w[1].n <= w[0].n) {
            return Err(Error::InvalidInput(format!(
                "series n must be strictly increasing ({} then {})",
                w[0].n, w[1].n
            )));
        }
        Ok(Self { alpha, method, points })
    }

    pub fn from_gaps(alpha: f64, method: Method, ns: &[f64], gaps: &[f64]) -> Result<Self> {
        if ns.len() != gaps.len() {
            return Err(Error::InvalidInput("n and gap columns differ in length".into()));
        }
        if let Some(g) = gaps.iter().find(|g| !(**g > 0.0)) {
            return Err(Error::InvalidInput(format!("gap {g} is not positive")));
        }
        let points = ns
            .iter()
            .zip(gaps)
            .map(|(&n, &g)| ScalingPoint { n, log_gap: g.ln() })
            .collect();
        Self::new(alpha, method, points)
    }

    /// Builds a series from records sharing one `alpha` and method.
    pub fn from_records(records: &[GapRecord]) -> Result<Self> {
        let first = records
            .first()
            .ok_or_else(|| Error::InvalidInput("no records".into()))?;
        if records
            .iter()
            .any(|r| r.alpha() != first.alpha() || r.method() != first.method())
        {
            return Err(Error::InvalidInput("records mix alpha or method".into()));
        }
        let points = records
            .iter()
            .map(|r| ScalingPoint {
                n: r.n(),
                log_gap: r.ln_gap(),
            })
            .collect();
        Self::new(first.alpha(), first.method(), points)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn points(&self) -> &[ScalingPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points with `lo <= n <= hi`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Self {
        Self {
            alpha: self.alpha,
            method: self.method,
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.n >= lo && p.n <= hi)
                .collect(),
        }
    }

    fn xf(&self) -> (Vec<f64>, Vec<f64>) {
        self.points.iter().map(|p| (p.n.ln(), p.log_gap)).unzip()
    }

    fn n_range(&self) -> (f64, f64) {
        (
            self.points.first().map_or(f64::NAN, |p| p.n),
            self.points.last().map_or(f64::NAN, |p| p.n),
        )
    }
}

/// `n_min * 10^(i / points_per_decade)` for every `i` that stays at or
/// below `n_max` (with a relative slack of `1e-9`). Uniform in `ln n`.
pub fn log_grid(n_min: f64, n_max: f64, points_per_decade: u32) -> Result<Vec<f64>> {
    if !(n_min > 0.0 && n_max > n_min && n_max.is_finite()) {
        return Err(Error::InvalidInput(format!("need 0 < n_min < n_max, got {n_min}, {n_max}")));
    }
    if points_per_decade == 0 {
        return Err(Error::InvalidInput("points per decade must be positive".into()));
    }
    let ppd = f64::from(points_per_decade);
    let steps = ((n_max / n_min).log10() * ppd + 1e-9).floor() as u64;
    Ok((0..=steps)
        .map(|i| n_min * 10f64.powf(i as f64 / ppd))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum FitModel {
    /// `g = a n^-p`. `ln_a` survives when `a` underflows.
    Power { a: f64, ln_a: f64, p: f64 },
    /// `g = b exp(-c n^q)`
    Exponential { b: f64, ln_b: f64, c: f64, q: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    /// Root-mean-square residual in `ln g`.
    pub residual: f64,
    pub n_range: (f64, f64),
    /// The exponent search ended on an edge of its bracket.
    pub at_bracket_edge: bool,
}

struct Line {
    intercept: f64,
    slope: f64,
    rms: f64,
}

fn least_squares_line(x: &[f64], y: &[f64]) -> Option<Line> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(xi, yi)| (xi - mx) * (yi - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (yi - intercept - slope * xi).powi(2))
        .sum();
    Some(Line {
        intercept,
        slope,
        rms: (ss / n).sqrt(),
    })
}

/// Least-squares power law on `(ln n, ln g)`.
pub fn power_fit(series: &ScalingSeries) -> Result<FitResult> {
    if series.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "power fit needs at least 2 points, got {}",
            series.len()
        )));
    }
    let (x, f) = series.xf();
    let line = least_squares_line(&x, &f)
        .ok_or_else(|| Error::Degenerate("all n values are equal".into()))?;
    Ok(FitResult {
        model: FitModel::Power {
            a: line.intercept.exp(),
            ln_a: line.intercept,
            p: -line.slope,
        },
        residual: line.rms,
        n_range: series.n_range(),
        at_bracket_edge: false,
    })
}

/// [`power_fit`] on each inclusive `(n_lo, n_hi)` bin, in order.
pub fn binned_power_fits(series: &ScalingSeries, bins: &[(f64, f64)]) -> Result<Vec<FitResult>> {
    let parts: Vec<ScalingSeries> = bins.iter().map(|&(lo, hi)| series.restrict(lo, hi)).collect();
    let empty: Vec<(f64, f64)> = bins
        .iter()
        .zip(&parts)
        .filter(|(_, s)| s.len() < 2)
        .map(|(b, _)| *b)
        .collect();
    if !empty.is_empty() {
        return Err(Error::EmptyBin(empty));
    }
    parts.iter().map(power_fit).collect()
}

/// Decade bins `[10^k, 10^(k+1)]` covering the series.
pub fn decade_bins(series: &ScalingSeries) -> Vec<(f64, f64)> {
    let (lo, hi) = series.n_range();
    if !(lo > 0.0 && hi > lo) {
        return Vec::new();
    }
    let k0 = (lo.log10() + 1e-9).floor() as i32;
    let k1 = (hi.log10() - 1e-9).ceil() as i32;
    (k0..k1)
        .map(|k| (10f64.powi(k), 10f64.powi(k + 1)))
        .collect()
}

/// Stretched-exponential fit: golden-section search over `q` in
/// `[0.01, 1]`, with `(ln B, C)` solved by linear least squares at each `q`.
pub fn exponential_fit(series: &ScalingSeries) -> Result<FitResult> {
    if series.len() < 4 {
        return Err(Error::InvalidInput(format!(
            "exponential fit needs at least 4 points, got {}",
            series.len()
        )));
    }
    let (x, f) = series.xf();
    let inner = |q: f64| -> Result<Line> {
        let u: Vec<f64> = x.iter().map(|xi| (q * xi).exp()).collect();
        let line = least_squares_line(&u, &f)
            .ok_or_else(|| Error::Degenerate("all n values are equal".into()))?;
        if !line.rms.is_finite() {
            return Err(Error::Convergence(format!("residual is not finite at q = {q}")));
        }
        Ok(line)
    };
    let (q_lo, q_hi) = EXP_Q_RANGE;
    let best = golden_section(|q| inner(q).map(|l| l.rms), q_lo, q_hi, 1e-12)?;
    let line = inner(best.x)?;
    let edge_tol = 1e-6;
    Ok(FitResult {
        model: FitModel::Exponential {
            b: line.intercept.exp(),
            ln_b: line.intercept,
            c: -line.slope,
            q: best.x,
        },
        residual: line.rms,
        n_range: series.n_range(),
        at_bracket_edge: best.x - q_lo < edge_tol || q_hi - best.x < edge_tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub n: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeRatio {
    pub points: Vec<RatioPoint>,
    /// Interior `n` values skipped because `|f'|` fell below [`SLOPE_FLOOR`].
    pub omitted: Vec<f64>,
}

/// `R = f''/f'` at every interior point of a uniform `ln n` grid, using
/// second-order central differences.
pub fn derivative_ratio(series: &ScalingSeries) -> Result<DerivativeRatio> {
    if series.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "derivative ratio needs at least 3 points, got {}",
            series.len()
        )));
    }
    let (x, f) = series.xf();
    let h = x[1] - x[0];
    for (i, w) in x.windows(2).enumerate() {
        let hi = w[1] - w[0];
        if ((hi - h) / h).abs() > GRID_REL_TOL {
            return Err(Error::NonUniformGrid(format!(
                "spacing {hi} at index {i} differs from {h}"
            )));
        }
    }
    let mut out = DerivativeRatio {
        points: Vec::with_capacity(x.len() - 2),
        omitted: Vec::new(),
    };
    for i in 1..x.len() - 1 {
        let d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
        let d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
        let n = series.points[i].n;
        if d1.abs() < SLOPE_FLOOR {
            out.omitted.push(n);
        } else {
            out.points.push(RatioPoint { n, r: d2 / d1 });
        }
    }
    Ok(out)
}

/// Size `n` at which `ratio(n)` (exact over leading-order gap) reaches `v`.
///
/// Requires `ratio(n_lo) < v < ratio(n_hi)` and a ratio that increases on an
/// 8-point log grid across the bracket; then bisects in `ln n` until
/// `n_hi / n_lo <= 1 + 1e-3`.
pub fn threshold_n_ratio<F>(alpha: f64, v: f64, ratio: F, n_lo: f64, n_hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if classify_region(alpha)? != Region::Polynomial {
        return Err(Error::Regime(format!(
            "threshold search needs 1/4 < alpha < 1/3, got {alpha}"
        )));
    }
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!("v must lie in (0, 1), got {v}")));
    }
    if !(n_lo > 0.0 && n_hi > n_lo) {
        return Err(Error::Bracket(format!("need 0 < n_lo < n_hi, got {n_lo}, {n_hi}")));
    }
    let (x_lo, x_hi) = (n_lo.ln(), n_hi.ln());
    let grid: Vec<f64> = (0..8)
        .map(|i| (x_lo + (x_hi - x_lo) * f64::from(i) / 7.0).exp())
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&n| ratio(n)).collect::<Result<_>>()?;
    if !(values[0] < v && v < values[7]) {
        return Err(Error::Bracket(format!(
            "ratio({n_lo:e}) = {:.6}, ratio({n_hi:e}) = {:.6} do not bracket v = {v}",
            values[0], values[7]
        )));
    }
    if let Some(i) = (0..7).find(|&i| values[i + 1] <= values[i]) {
        return Err(Error::NonMonotone(format!(
            "ratio({:e}) = {:.6} >= ratio({:e}) = {:.6}",
            grid[i],
            values[i],
            grid[i + 1],
            values[i + 1]
        )));
    }
    let cell = (0..7)
        .find(|&i| values[i] < v && v <= values[i + 1])
        .expect("bracket checked above");
    let (mut lo, mut hi) = (grid[cell].ln(), grid[cell + 1].ln());
    let target = (1.0f64 + 1e-3).ln();
    while hi - lo > target {
        let mid = 0.5 * (lo + hi);
        if ratio(mid.exp())? < v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// Continuous gap over the leading-order asymptotic gap at `n`.
pub fn continuous_first_order_ratio(
    n: f64,
    alpha: f64,
    omega: f64,
    c: f64,
    prec: &PrecisionPolicy,
) -> Result<f64> {
    let exact = continuous_gap(n, alpha, omega, c, prec)?;
    Ok((exact.ln_gap() - log_gap_first_order(n, alpha, omega, c)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(ns: &[f64], g: impl Fn(f64) -> f64) -> ScalingSeries {
        let gaps: Vec<f64> = ns.iter().map(|&n| g(n)).collect();
        ScalingSeries::from_gaps(0.3, Method::Continuous, ns, &gaps).unwrap()
    }

    #[test]
    fn grid_point_count() {
        assert_eq!(log_grid(1e2, 1e3, 16).unwrap().len(), 17);
        assert_eq!(log_grid(1e2, 1e4, 16).unwrap().len(), 33);
        assert!(log_grid(1e3, 1e2, 16).is_err());
    }

    #[test]
    fn exact_power_law() {
        let ns = log_grid(10.0, 1e5, 4).unwrap();
        let s = series(&ns, |n| 5.0 * n.powf(-2.0));
        let fit = power_fit(&s).unwrap();
        let FitModel::Power { a, p, .. } = fit.model else { panic!() };
        assert!((a - 5.0).abs() < 1e-10 && (p - 2.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn degenerate_and_short_series() {
        let s = series(&[10.0], |n| n);
        assert!(power_fit(&s).is_err());
        assert!(ScalingSeries::from_gaps(0.3, Method::Continuous, &[2.0, 1.0], &[1.0, 1.0]).is_err());
        assert!(ScalingSeries::from_gaps(0.3, Method::Continuous, &[1.0, 2.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn binned_fits_and_empty_bins() {
        let ns = log_grid(1e2, 1e5, 8).unwrap();
        let s = series(&ns, |n| 0.7 * n.powf(-0.4));
        let bins = decade_bins(&s);
        assert_eq!(bins.len(), 3);
        for fit in binned_power_fits(&s, &bins).unwrap() {
            let FitModel::Power { p, .. } = fit.model else { panic!() };
            assert!((p - 0.4).abs() < 1e-12);
        }
        let whole = binned_power_fits(&s, &[(1e2, 1e5)]).unwrap();
        assert_eq!(whole[0], power_fit(&s).unwrap());
        let err = binned_power_fits(&s, &[(1e2, 1e3), (2e6, 3e6)]).unwrap_err();
        assert_eq!(err, Error::EmptyBin(vec![(2e6, 3e6)]));
        assert!(err.to_string().contains("2e6"));
    }

    #[test]
    fn exponential_recovery() {
        let ns = log_grid(1e1, 1e6, 8).unwrap();
        let s = series(&ns, |n| 3.0 * (-0.2 * n.powf(0.25)).exp());
        let fit = exponential_fit(&s).unwrap();
        let FitModel::Exponential { b, c, q, .. } = fit.model else { panic!() };
        assert!((b - 3.0).abs() < 1e-6, "{b}");
        assert!((c - 0.2).abs() < 1e-6, "{c}");
        assert!((q - 0.25).abs() < 1e-6, "{q}");
        assert!(!fit.at_bracket_edge);
    }

    #[test]
    fn power_law_drives_exponential_fit_to_lower_edge() {
        let ns = log_grid(1e2, 1e6, 8).unwrap();
        let s = series(&ns, |n| 2.0 * n.powf(-0.3));
        let exp_fit = exponential_fit(&s).unwrap();
        let FitModel::Exponential { q, .. } = exp_fit.model else { panic!() };
        assert!(q < EXP_Q_RANGE.0 + 1e-6);
        assert!(exp_fit.at_bracket_edge);
        assert!(power_fit(&s).unwrap().residual < exp_fit.residual);
    }

    #[test]
    fn ratio_of_power_law_vanishes() {
        let ns = log_grid(1e2, 1e8, 16).unwrap();
        let s = series(&ns, |n| 1.3 * n.powf(-0.1));
        let r = derivative_ratio(&s).unwrap();
        assert_eq!(r.points.len(), ns.len() - 2);
        assert!(r.points.iter().all(|p| p.r.abs() < 1e-8));
    }

    #[test]
    fn ratio_of_stretched_exponential_is_q() {
        let ns = log_grid(1e1, 1e7, 16).unwrap();
        let s = series(&ns, |n| 2.0 * (-0.5 * n.powf(0.25)).exp());
        let r = derivative_ratio(&s).unwrap();
        assert!(r.points.iter().all(|p| (p.r - 0.25).abs() < 1e-4));
    }

    #[test]
    fn flat_series_points_are_omitted() {
        let ns = log_grid(1e1, 1e3, 4).unwrap();
        let s = series(&ns, |_| 0.5);
        let r = derivative_ratio(&s).unwrap();
        assert!(r.points.is_empty());
        assert_eq!(r.omitted.len(), ns.len() - 2);
    }

    #[test]
    fn non_uniform_grid_is_rejected() {
        let s = series(&[1.0, 10.0, 200.0, 2000.0], |n| 1.0 / n);
        assert!(matches!(derivative_ratio(&s), Err(Error::NonUniformGrid(_))));
        let short = series(&[1.0, 10.0], |n| 1.0 / n);
        assert!(derivative_ratio(&short).is_err());
    }

    #[test]
    fn threshold_on_synthetic_ratio() {
        // ratio(n) = 1 - n^-0.1 crosses v at n = (1 - v)^-10
        let ratio = |n: f64| Ok(1.0 - n.powf(-0.1));
        let n = threshold_n_ratio(0.3, 0.5, ratio, 10.0, 1e6).unwrap();
        assert!((n / 1024.0 - 1.0).abs() < 1e-3, "{n}");
        let err = threshold_n_ratio(0.3, 0.01, ratio, 10.0, 1e6);
        assert!(matches!(err, Err(Error::Bracket(_))));
        let bumpy = |n: f64| Ok(if (1e3..1e4).contains(&n) { 0.1 } else { 1.0 - n.powf(-0.1) });
        assert!(matches!(
            threshold_n_ratio(0.3, 0.5, bumpy, 10.0, 1e6),
            Err(Error::NonMonotone(_))
        ));
        assert!(matches!(
            threshold_n_ratio(0.4, 0.5, ratio, 10.0, 1e6),
            Err(Error::Regime(_))
        ));
    }
}
