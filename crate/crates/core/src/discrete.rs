//! Symmetric-subspace annealing Hamiltonian and its minimum gap.
//!
//! For a cost function that depends only on Hamming weight, `H(s)` restricted
//! to the span of the normalized Dicke states `|w>` is tridiagonal:
//!
//! ```text
//! <w|H(s)|w>   = s (w + b(w))
//! <w+1|H(s)|w> = -(1 - s) sqrt((w + 1)(n - w))
//! ```
//!
//! The two lowest eigenvalues are found by Sturm-sequence bisection, which is
//! linear in `n` per pivot and never forms the full spectrum.

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::optimize::golden_section;
use crate::record::GapRecord;

pub const DEFAULT_S_GRID: usize = 512;
pub const DEFAULT_REL_TOL: f64 = 1e-14;
pub const S_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BarrierShape {
    Square,
    Binomial,
}

impl std::str::FromStr for BarrierShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(BarrierShape::Square),
            "binomial" => Ok(BarrierShape::Binomial),
            other => Err(Error::InvalidInput(format!("unknown barrier shape '{other}'"))),
        }
    }
}

impl std::fmt::Display for BarrierShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BarrierShape::Square => "square",
            BarrierShape::Binomial => "binomial",
        })
    }
}

/// The barrier `b(w)` added to the Hamming-weight cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    shape: BarrierShape,
    alpha: f64,
    height_coeff: f64,
    width_coeff: f64,
    center_fraction: f64,
}

impl BarrierSpec {
    pub fn new(shape: BarrierShape, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(Error::Domain(format!("barrier alpha must lie in (0, 1/2), got {alpha}")));
        }
        Ok(Self {
            shape,
            alpha,
            height_coeff: 1.0,
            width_coeff: 1.0,
            center_fraction: 0.25,
        })
    }

    pub fn square(alpha: f64) -> Result<Self> {
        Self::new(BarrierShape::Square, alpha)
    }

    pub fn binomial(alpha: f64) -> Result<Self> {
        Self::new(BarrierShape::Binomial, alpha)
    }

    pub fn with_height_coeff(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain(format!("height coefficient must be positive, got {h}")));
        }
        self.height_coeff = h;
        Ok(self)
    }

    pub fn with_width_coeff(mut self, w: f64) -> Result<Self> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::Domain(format!("width coefficient must be positive, got {w}")));
        }
        self.width_coeff = w;
        Ok(self)
    }

    pub fn with_center_fraction(mut self, f: f64) -> Result<Self> {
        if !(f > 0.0 && f < 1.0) {
            return Err(Error::Domain(format!("center fraction must lie in (0, 1), got {f}")));
        }
        self.center_fraction = f;
        Ok(self)
    }

    pub fn shape(&self) -> BarrierShape {
        self.shape
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn height_coeff(&self) -> f64 {
        self.height_coeff
    }

    pub fn width_coeff(&self) -> f64 {
        self.width_coeff
    }

    pub fn center_fraction(&self) -> f64 {
        self.center_fraction
    }

    /// Continuous width whose integer part defines the discrete barrier
    /// width: `width_coeff n^alpha` (square) or the binomial order
    /// `M = 2 floor(width_coeff n^(2 alpha) / 2)`.
    pub fn width(&self, n: u64) -> f64 {
        let n = n as f64;
        match self.shape {
            BarrierShape::Square => self.width_coeff * n.powf(self.alpha),
            BarrierShape::Binomial => binomial_order(self.width_coeff, self.alpha, n) as f64,
        }
    }
}

fn binomial_order(width_coeff: f64, alpha: f64, n: f64) -> u64 {
    2 * (width_coeff * n.powf(2.0 * alpha) / 2.0).floor() as u64
}

/// `ln C(m, k)`.
fn ln_binomial(m: u64, k: u64) -> f64 {
    ln_gamma(m as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((m - k) as f64 + 1.0)
}

/// Barrier height at Hamming weight `w` out of `n` bits.
pub fn barrier_value(w: u64, n: u64, spec: &BarrierSpec) -> Result<f64> {
    if w > n {
        return Err(Error::Domain(format!("Hamming weight {w} outside [0, {n}]")));
    }
    let nf = n as f64;
    let height = spec.height_coeff * nf.powf(spec.alpha);
    match spec.shape {
        BarrierShape::Square => {
            let offset = (w as f64 - spec.center_fraction * nf).abs();
            let half = spec.width_coeff * nf.powf(spec.alpha) / 2.0;
            Ok(if offset <= half { height } else { 0.0 })
        }
        BarrierShape::Binomial => {
            let m = binomial_order(spec.width_coeff, spec.alpha, nf);
            let half = m / 2;
            let center = (spec.center_fraction * nf).round() as i64;
            let offset = w as i64 - center;
            if offset.unsigned_abs() > half {
                return Ok(0.0);
            }
            let k = (offset + half as i64) as u64;
            if k == half {
                return Ok(height);
            }
            let ln_ratio = ln_binomial(m, k) - ln_binomial(m, half);
            Ok(height * ln_ratio.exp())
        }
    }
}

/// `w + b(w)` for `w = 0..=n`.
pub fn cost_profile(n: u64, barrier: Option<&BarrierSpec>) -> Result<Vec<f64>> {
    (0..=n)
        .map(|w| {
            let b = match barrier {
                Some(spec) => barrier_value(w, n, spec)?,
                None => 0.0,
            };
            Ok(w as f64 + b)
        })
        .collect()
}

/// Symmetric tridiagonal matrix stored by its diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "tridiagonal shape mismatch: {} diagonal vs {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("tridiagonal entries must be finite".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        gershgorin(&self.diag, &self.offdiag)
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        sturm_count(&self.diag, &self.offdiag, lambda)
    }
}

fn gershgorin(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// Negative pivots of `T - lambda I = L D L^T`.
fn sturm_count(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    let scale = diag
        .iter()
        .chain(offdiag)
        .fold(lambda.abs(), |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    sturm_count_guarded(diag, offdiag, lambda, f64::EPSILON * f64::EPSILON * scale)
}

/// Pivots smaller than `guard` in magnitude are replaced by `-guard` before
/// being counted.
fn sturm_count_guarded(diag: &[f64], offdiag: &[f64], lambda: f64, guard: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - lambda;
    for i in 0..diag.len() {
        if i > 0 {
            q = (diag[i] - lambda) - offdiag[i - 1] * offdiag[i - 1] / q;
        }
        if q.abs() < guard {
            q = -guard;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based) of an unreduced block.
fn bisect_eigenvalue(diag: &[f64], offdiag: &[f64], k: usize, lo: f64, hi: f64, tol: f64) -> f64 {
    let scale = diag
        .iter()
        .chain(offdiag)
        .fold(lo.abs().max(hi.abs()), |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let guard = f64::EPSILON * f64::EPSILON * scale;
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count_guarded(diag, offdiag, mid, guard) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lowest one or two eigenvalues of a block with nonzero off-diagonals.
fn block_lowest(diag: &[f64], offdiag: &[f64], rel_tol: f64) -> Vec<f64> {
    if diag.len() == 1 {
        return vec![diag[0]];
    }
    let (lo, hi) = gershgorin(diag, offdiag);
    let diameter = (hi - lo).max(f64::MIN_POSITIVE);
    let tol = rel_tol * diameter;
    // Pad so both ends are strict bounds under rounding.
    let pad = 4.0 * f64::EPSILON * diameter.max(lo.abs()).max(hi.abs());
    let (lo, hi) = (lo - pad, hi + pad);
    let l0 = bisect_eigenvalue(diag, offdiag, 0, lo, hi, tol);
    let l1 = bisect_eigenvalue(diag, offdiag, 1, (l0 - tol).max(lo), hi, tol);
    vec![l0, l1]
}

/// The two smallest eigenvalues `(lambda0, lambda1)` of a symmetric
/// tridiagonal matrix, each bisected to `rel_tol` times the Gershgorin
/// diameter of its block.
///
/// Zero off-diagonal entries split the matrix into independent blocks whose
/// spectra are merged.
pub fn lowest_two_eigenvalues(m: &TridiagonalMatrix, rel_tol: f64) -> Result<(f64, f64)> {
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!("rel_tol must be positive, got {rel_tol}")));
    }
    if m.dim() < 2 {
        return Err(Error::Degenerate("a 1x1 matrix has no second eigenvalue".into()));
    }
    let mut lowest = Vec::with_capacity(4);
    let mut start = 0;
    for end in 1..=m.dim() {
        if end == m.dim() || m.offdiag[end - 1] == 0.0 {
            lowest.extend(block_lowest(&m.diag[start..end], &m.offdiag[start..end - 1], rel_tol));
            start = end;
        }
    }
    lowest.sort_by(|a, b| a.total_cmp(b));
    Ok((lowest[0], lowest[1]))
}

/// `H(s)` on the `(n + 1)`-dimensional symmetric subspace.
pub fn build_hamiltonian(n: u64, s: f64, barrier: Option<&BarrierSpec>) -> Result<TridiagonalMatrix> {
    let cost = cost_profile(n, barrier)?;
    hamiltonian_from_cost(n, s, &cost)
}

fn hamiltonian_from_cost(n: u64, s: f64, cost: &[f64]) -> Result<TridiagonalMatrix> {
    if n == 0 {
        return Err(Error::Domain("need at least one qubit".into()));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("s must lie in [0, 1], got {s}")));
    }
    let diag = cost.iter().map(|c| s * c).collect();
    let offdiag = (0..n)
        .map(|w| -(1.0 - s) * (((w + 1) as f64) * ((n - w) as f64)).sqrt())
        .collect();
    TridiagonalMatrix::new(diag, offdiag)
}

/// `g(s) = lambda1 - lambda0` of `H(s)`.
pub fn gap_at_s(n: u64, s: f64, barrier: Option<&BarrierSpec>, rel_tol: f64) -> Result<f64> {
    let cost = cost_profile(n, barrier)?;
    gap_from_cost(n, s, &cost, rel_tol)
}

fn gap_from_cost(n: u64, s: f64, cost: &[f64], rel_tol: f64) -> Result<f64> {
    let h = hamiltonian_from_cost(n, s, cost)?;
    let (l0, l1) = lowest_two_eigenvalues(&h, rel_tol)?;
    Ok(l1 - l0)
}

/// Result of a coarse scan plus golden-section refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct MinGapScan {
    pub record: GapRecord,
    /// Smallest gap on the coarse grid.
    pub grid_min: f64,
    /// The three smallest grid gaps differed by less than `rel_tol`.
    pub flat_minimum: bool,
}

/// `g_min = min_s g(s)`: uniform scan over `s_grid` points, then
/// golden-section refinement around the best grid point to `|ds| <= 1e-10`.
pub fn min_gap_discrete(
    n: u64,
    barrier: Option<&BarrierSpec>,
    s_grid: usize,
    rel_tol: f64,
) -> Result<GapRecord> {
    Ok(scan_min_gap(n, barrier, s_grid, rel_tol)?.record)
}

pub fn scan_min_gap(
    n: u64,
    barrier: Option<&BarrierSpec>,
    s_grid: usize,
    rel_tol: f64,
) -> Result<MinGapScan> {
    if s_grid < 64 {
        return Err(Error::Domain(format!("s grid needs at least 64 points, got {s_grid}")));
    }
    let cost = cost_profile(n, barrier)?;
    let last = (s_grid - 1) as f64;
    let grid: Vec<f64> = (0..s_grid)
        .into_par_iter()
        .map(|i| gap_from_cost(n, i as f64 / last, &cost, rel_tol))
        .collect::<Result<_>>()?;

    let best = grid
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("grid is non-empty");
    let grid_min = grid[best];

    let mut sorted = grid.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let flat_minimum = sorted[2] - sorted[0] < rel_tol;
    if flat_minimum {
        warn!("flat minimum on the s grid at n = {n}: three smallest gaps within {rel_tol:e}");
    }

    let lo = best.saturating_sub(1) as f64 / last;
    let hi = (best + 1).min(s_grid - 1) as f64 / last;
    let refined = golden_section(|s| gap_from_cost(n, s, &cost, rel_tol), lo, hi, S_TOL)?;
    let (s_star, gap) = if refined.value <= grid_min {
        (refined.x, refined.value)
    } else {
        (best as f64 / last, grid_min)
    };
    let alpha = barrier.map_or(0.0, |b| b.alpha());
    Ok(MinGapScan {
        record: GapRecord::discrete(n, alpha, gap, s_star)?,
        grid_min,
        flat_minimum,
    })
}

/// Integers `n` in `[n_min, n_max]` at which `floor(width(n))` increases.
///
/// Candidates come from inverting the width law and are then checked
/// against the integer part directly.
pub fn width_transitions(spec: &BarrierSpec, n_min: u64, n_max: u64) -> Vec<u64> {
    let n_min = n_min.max(1);
    let level = |n: u64| spec.width(n).floor() as u64;
    let exponent = match spec.shape {
        BarrierShape::Square => spec.alpha,
        BarrierShape::Binomial => 2.0 * spec.alpha,
    };
    let mut out = Vec::new();
    let mut target = level(n_min - 1) + 1;
    loop {
        let guess = (target as f64 / spec.width_coeff).powf(1.0 / exponent).ceil();
        let mut n = (guess as u64).max(n_min);
        while n > n_min && level(n - 1) >= target {
            n -= 1;
        }
        while n <= n_max && level(n) < target {
            n += 1;
        }
        if n > n_max {
            break;
        }
        out.push(n);
        target = level(n) + 1;
    }
    out
}
