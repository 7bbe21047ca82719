//! Exact gap of the continuous double well.
//!
//! The well is `V(x) = omega^2 x^2` outside `|x| < a` and a flat barrier of
//! height `omega eps^(1-alpha)` inside, with `eps = 2/n` and
//! `2a = eps^(1-alpha)`. Inside the barrier the even/odd solutions are
//! `cosh(kx)` / `sinh(kx)`; outside they are `D_nu(sqrt(2 omega / eps) x)`.
//! Matching logarithmic derivatives at `x = a` gives, for parity `+` (even)
//! and `-` (odd),
//!
//! ```text
//! k D_nu(z0) (e^{ka} -/+ e^{-ka}) = sqrt(2 omega / eps) D'_nu(z0) (e^{ka} +/- e^{-ka})
//! nu = cE / (2 omega) - 1/2,   k = sqrt(omega eps^(-1-alpha) - cE / eps),   z0 = sqrt(2 omega / eps) a
//! ```
//!
//! The lowest even root is the ground state and the lowest odd root the first
//! excited state. In the exponential region the two differ by roughly
//! `exp(-2ka)`, so the solver raises the working precision until the *gap*
//! (not the energies) stops changing.

use rug::ops::Pow;
use rug::{Assign, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::GapRecord;
use crate::specfun::{pcf_d_with_prime, PrecisionPolicy};

pub const DEFAULT_OMEGA: f64 = 4.0 / 3.0;
pub const DEFAULT_DIGIT_CAP: u32 = 4096;
pub const SCAN_POINTS: usize = 4096;
/// Relative change of the gap under precision doubling that counts as converged.
pub const GAP_REL_CHANGE: f64 = 1e-6;

/// `8 / (3 (sqrt 3 - 1))`, which ties the continuous well to the qubit problem.
pub fn default_c() -> f64 {
    8.0 / (3.0 * (3f64.sqrt() - 1.0))
}

/// Smallest `n` (exclusive) at which the default barrier top clears
/// `4 omega`: `2 * 4^(1/alpha)`.
pub fn tunneling_min_n(alpha: f64) -> f64 {
    2.0 * 4f64.powf(1.0 / alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Parameters of the rescaled continuous well.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousModel {
    n: f64,
    alpha: f64,
    omega: f64,
    c: f64,
    half_width: Option<f64>,
    barrier_scale: f64,
}

impl ContinuousModel {
    /// Model with the qubit-correlated constants `omega = 4/3`,
    /// `c = 8/(3(sqrt 3 - 1))`. `alpha` must lie strictly inside `(1/4, 1/2)`.
    pub fn new(n: f64, alpha: f64) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain(format!("n must be positive and finite, got {n}")));
        }
        if !(alpha > 0.25 && alpha < 0.5) {
            return Err(Error::Regime(format!(
                "continuous model needs 1/4 < alpha < 1/2, got {alpha}"
            )));
        }
        Ok(Self {
            n,
            alpha,
            omega: DEFAULT_OMEGA,
            c: default_c(),
            half_width: None,
            barrier_scale: 1.0,
        })
    }

    pub fn with_constants(mut self, omega: f64, c: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite() && c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("omega and c must be positive, got {omega}, {c}")));
        }
        self.omega = omega;
        self.c = c;
        Ok(self)
    }

    /// Overrides the barrier half-width `a`; `a = 0` is the harmonic limit.
    pub fn with_half_width(mut self, a: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("half width must be non-negative, got {a}")));
        }
        self.half_width = Some(a);
        Ok(self)
    }

    /// Multiplies the barrier height only, leaving the well untouched.
    pub fn with_barrier_scale(mut self, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain(format!("barrier scale must be positive, got {scale}")));
        }
        self.barrier_scale = scale;
        Ok(self)
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn epsilon(&self) -> f64 {
        2.0 / self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
            .unwrap_or_else(|| self.epsilon().powf(1.0 - self.alpha) / 2.0)
    }

    pub fn barrier_height(&self) -> f64 {
        self.barrier_scale * self.omega * self.epsilon().powf(1.0 - self.alpha)
    }

    pub fn z0(&self) -> f64 {
        (2.0 * self.omega / self.epsilon()).sqrt() * self.half_width()
    }

    /// `cE` at the barrier top, `omega eps^(-alpha)` times the barrier scale.
    pub fn barrier_top_ce(&self) -> f64 {
        self.barrier_height() / self.epsilon()
    }

    /// The barrier top must clear the harmonic scale by a factor of four.
    pub fn check_tunneling(&self) -> Result<()> {
        let top = self.barrier_top_ce();
        if top > 4.0 * self.omega {
            Ok(())
        } else {
            Err(Error::Regime(format!(
                "barrier top cE = {top:.4} is not above 4 omega = {:.4} at n = {}",
                4.0 * self.omega,
                self.n
            )))
        }
    }

    /// Starting digit count that keeps `E_- - E_+` above the rounding floor.
    pub fn initial_digits(&self, floor: u32) -> u32 {
        let exponent = (1.0 - 3.0 * self.alpha) / 2.0;
        let decades = self.omega.sqrt() * self.epsilon().powf(exponent) * std::f64::consts::LOG10_E;
        floor.max(20 + decades.ceil() as u32)
    }
}

/// `E`, `nu` and `k` at one trial energy.
#[derive(Debug, Clone)]
pub struct MatchingContext {
    pub parity: Parity,
    pub energy: Float,
    pub nu: Float,
    pub k: Float,
}

/// Model constants materialized at one working precision.
struct Evaluator {
    prec: PrecisionPolicy,
    bits: u32,
    omega: Float,
    c: Float,
    half_width: Float,
    /// sqrt(2 omega / eps)
    y_scale: Float,
    z0: Float,
    /// barrier_scale * omega * eps^(-1-alpha)
    k_top: Float,
    inv_eps: Float,
    overflow_ka: f64,
}

impl Evaluator {
    fn new(model: &ContinuousModel, prec: &PrecisionPolicy) -> Self {
        let bits = prec.bits();
        let f = |v: f64| Float::with_val(bits, v);
        let eps = Float::with_val(bits, 2u32) / f(model.n);
        let inv_eps = Float::with_val(bits, eps.recip_ref());
        let omega = f(model.omega);
        let alpha = f(model.alpha);
        let half_width = match model.half_width {
            Some(a) => f(a),
            None => {
                let one_minus = Float::with_val(bits, 1u32 - &alpha);
                Float::with_val(bits, (&eps).pow(&one_minus)) / 2u32
            }
        };
        let y_scale = (Float::with_val(bits, &omega * 2u32) / &eps).sqrt();
        let z0 = Float::with_val(bits, &y_scale * &half_width);
        let exponent = Float::with_val(bits, -1i32 - &alpha);
        let k_top = Float::with_val(bits, (&eps).pow(&exponent)) * &omega * f(model.barrier_scale);
        Self {
            prec: *prec,
            bits,
            omega,
            c: f(model.c),
            half_width,
            y_scale,
            z0,
            k_top,
            inv_eps,
            overflow_ka: f64::from(prec.digits()) * std::f64::consts::LN_10,
        }
    }

    /// `k` at `cE`, or a regime error when `cE` is at or above the barrier top.
    fn k(&self, ce: &Float) -> Result<Float> {
        let mut k2 = Float::with_val(self.bits, ce * &self.inv_eps);
        k2 = Float::with_val(self.bits, &self.k_top - &k2);
        if k2 <= 0 {
            return Err(Error::Regime(format!(
                "cE = {} is at or above the barrier top",
                ce.to_f64()
            )));
        }
        Ok(k2.sqrt())
    }

    fn nu(&self, ce: &Float) -> Float {
        let two_omega = Float::with_val(self.bits, &self.omega * 2u32);
        Float::with_val(self.bits, ce / &two_omega) - 0.5f64
    }

    /// Matching function in the variable `cE`.
    fn eval(&self, parity: Parity, ce: &Float) -> Result<Float> {
        let k = self.k(ce)?;
        let nu = self.nu(ce);
        let (d, dp) = pcf_d_with_prime(&nu, &self.z0, &self.prec)?;
        let ka = Float::with_val(self.bits, &k * &self.half_width);

        // (grow, decay) = (e^{ka}, e^{-ka}) or, past the overflow threshold,
        // (1, e^{-2ka}) after dividing out e^{ka}.
        let (grow, decay) = if ka.to_f64() > self.overflow_ka {
            let two_ka = Float::with_val(self.bits, &ka * 2u32);
            (Float::with_val(self.bits, 1u32), (-two_ka).exp())
        } else {
            let g = Float::with_val(self.bits, ka.exp_ref());
            let d = Float::with_val(self.bits, g.recip_ref());
            (g, d)
        };
        let (inside, outside) = match parity {
            Parity::Even => (
                Float::with_val(self.bits, &grow - &decay),
                Float::with_val(self.bits, &grow + &decay),
            ),
            Parity::Odd => (
                Float::with_val(self.bits, &grow + &decay),
                Float::with_val(self.bits, &grow - &decay),
            ),
        };
        let lhs = k * d * inside;
        let rhs = Float::with_val(self.bits, &self.y_scale * &dp) * outside;
        Ok(lhs - rhs)
    }

    fn ce_of_energy(&self, e: &Float) -> Float {
        Float::with_val(self.bits, e * &self.c)
    }

    fn energy_of_ce(&self, ce: &Float) -> Float {
        Float::with_val(self.bits, ce / &self.c)
    }
}

/// Builds the matching context for a trial energy.
pub fn matching_context(
    model: &ContinuousModel,
    parity: Parity,
    energy: &Float,
    prec: &PrecisionPolicy,
) -> Result<MatchingContext> {
    let ev = Evaluator::new(model, prec);
    let ce = ev.ce_of_energy(energy);
    Ok(MatchingContext {
        parity,
        energy: Float::with_val(ev.bits, energy),
        nu: ev.nu(&ce),
        k: ev.k(&ce)?,
    })
}

/// The matching function `F_+/-(E)` whose roots are the eigenenergies.
///
/// When `ka` exceeds `ln(10^digits)` the common factor `e^{ka}` is divided
/// out; the rescaled function has the same roots.
pub fn matching_function(
    model: &ContinuousModel,
    parity: Parity,
    energy: &Float,
    prec: &PrecisionPolicy,
) -> Result<Float> {
    let ev = Evaluator::new(model, prec);
    ev.eval(parity, &ev.ce_of_energy(energy))
}

/// A sign-change bracket `[lo, hi]` in `cE`.
#[derive(Debug, Clone)]
pub struct RootBracket {
    pub lo: Float,
    pub hi: Float,
}

impl RootBracket {
    fn mid(&self) -> Float {
        Float::with_val(self.lo.prec(), &self.lo + &self.hi) / 2u32
    }
}

fn sign(x: &Float) -> i32 {
    match x.cmp0() {
        Some(std::cmp::Ordering::Less) => -1,
        Some(std::cmp::Ordering::Greater) => 1,
        _ => 0,
    }
}

/// Scans `cE` upward from `start` and returns the first sign-change cell.
fn scan_for_root(ev: &Evaluator, parity: Parity, start: &Float, top: f64) -> Result<RootBracket> {
    let omega = ev.omega.to_f64();
    let stop = (8.0 * omega).min(top * (1.0 - 1e-9));
    let start_f = start.to_f64();
    if !(stop > start_f) {
        return Err(Error::NoRoot(format!(
            "empty scan window [{start_f}, {stop}] for {parity:?} parity"
        )));
    }
    let step = (stop - start_f) / (SCAN_POINTS - 1) as f64;
    let mut prev_ce = Float::with_val(ev.bits, start);
    let mut prev = ev.eval(parity, &prev_ce)?;
    if sign(&prev) == 0 {
        return Ok(RootBracket { lo: prev_ce.clone(), hi: prev_ce });
    }
    for i in 1..SCAN_POINTS {
        let ce = Float::with_val(ev.bits, (start_f + step * i as f64).min(stop));
        let f = ev.eval(parity, &ce)?;
        if sign(&f) == 0 {
            return Ok(RootBracket { lo: ce.clone(), hi: ce });
        }
        if sign(&f) != sign(&prev) {
            return Ok(RootBracket { lo: prev_ce, hi: ce });
        }
        prev_ce = ce;
        prev = f;
    }
    Err(Error::NoRoot(format!(
        "no sign change of the {parity:?} matching function for cE in [{start_f:.3e}, {stop:.3e}]"
    )))
}

/// Bisects a sign-change bracket to relative width `10^-(digits-8)`.
fn bisect(ev: &Evaluator, parity: Parity, bracket: RootBracket) -> Result<RootBracket> {
    let RootBracket { mut lo, mut hi } = bracket;
    lo.set_prec(ev.bits);
    hi.set_prec(ev.bits);
    if lo == hi {
        return Ok(RootBracket { lo, hi });
    }
    let mut f_lo = ev.eval(parity, &lo)?;
    let f_hi = ev.eval(parity, &hi)?;
    let s_lo = sign(&f_lo);
    if s_lo == 0 {
        return Ok(RootBracket { lo: lo.clone(), hi: lo });
    }
    if sign(&f_hi) == 0 {
        return Ok(RootBracket { lo: hi.clone(), hi });
    }
    if s_lo == sign(&f_hi) {
        return Err(Error::NoRoot("bracket endpoints have the same sign".into()));
    }
    let rel = Float::with_val(ev.bits, -(f64::from(ev.prec.digits()) - 8.0)).exp10();
    let mut width = Float::new(ev.bits);
    let mut limit = Float::new(ev.bits);
    loop {
        width.assign(&hi - &lo);
        let mid = Float::with_val(ev.bits, &lo + &hi) / 2u32;
        limit.assign(mid.abs_ref());
        limit *= &rel;
        if width <= limit || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = ev.eval(parity, &mid)?;
        match sign(&f_mid) {
            0 => return Ok(RootBracket { lo: mid.clone(), hi: mid }),
            s if s == sign(&f_lo) => {
                lo = mid;
                f_lo = f_mid;
            }
            _ => hi = mid,
        }
    }
    Ok(RootBracket { lo, hi })
}

fn solve_ce(
    ev: &Evaluator,
    model: &ContinuousModel,
    parity: Parity,
    start: &Float,
    hint: Option<&RootBracket>,
) -> Result<RootBracket> {
    if let Some(prev) = hint {
        // Reuse a lower-precision root: widen its bracket and check the signs
        // again at the current precision before trusting it.
        let prev_lo = Float::with_val(ev.bits, &prev.lo);
        let prev_hi = Float::with_val(ev.bits, &prev.hi);
        let mid = Float::with_val(ev.bits, &prev_lo + &prev_hi) / 2u32;
        let spread = Float::with_val(ev.bits, &prev_hi - &prev_lo);
        let pad = Float::with_val(ev.bits, mid.abs_ref()) * 1e-30f64 + spread * 8u32;
        let widened = RootBracket {
            lo: Float::with_val(ev.bits, &mid - &pad),
            hi: Float::with_val(ev.bits, &mid + &pad),
        };
        if let Ok(fl) = ev.eval(parity, &widened.lo) {
            if let Ok(fh) = ev.eval(parity, &widened.hi) {
                if sign(&fl) * sign(&fh) < 0 {
                    return bisect(ev, parity, widened);
                }
            }
        }
    }
    let bracket = scan_for_root(ev, parity, start, model.barrier_top_ce())?;
    bisect(ev, parity, bracket)
}

fn scan_start(ev: &Evaluator) -> Float {
    Float::with_val(ev.bits, &ev.omega * 1e-6f64)
}

/// Final bisection bracket (in `cE`) of the lowest root of one parity.
pub fn solve_parity_bracket(
    model: &ContinuousModel,
    parity: Parity,
    prec: &PrecisionPolicy,
) -> Result<RootBracket> {
    model.check_tunneling()?;
    let ev = Evaluator::new(model, prec);
    solve_ce(&ev, model, parity, &scan_start(&ev), None)
}

/// Lowest eigenenergy `E` of the given parity.
pub fn solve_parity_energy(
    model: &ContinuousModel,
    parity: Parity,
    prec: &PrecisionPolicy,
) -> Result<Float> {
    let ev = Evaluator::new(model, prec);
    let bracket = solve_parity_bracket(model, parity, prec)?;
    Ok(ev.energy_of_ce(&bracket.mid()))
}

/// The even and odd ground energies at one precision.
#[derive(Debug, Clone)]
pub struct EnergyPair {
    pub even: RootBracket,
    pub odd: RootBracket,
    pub digits: u32,
    c: f64,
}

impl EnergyPair {
    pub fn energy(&self, parity: Parity) -> Float {
        let b = match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        };
        b.mid() / self.c
    }

    /// `E_- - E_+` at full working precision.
    pub fn gap(&self) -> Float {
        self.energy(Parity::Odd) - self.energy(Parity::Even)
    }
}

/// Solves the even root, then scans the odd function upward from it.
pub fn solve_pair(
    model: &ContinuousModel,
    prec: &PrecisionPolicy,
    hint: Option<&EnergyPair>,
) -> Result<EnergyPair> {
    model.check_tunneling()?;
    let ev = Evaluator::new(model, prec);
    let even = solve_ce(&ev, model, Parity::Even, &scan_start(&ev), hint.map(|h| &h.even))?;
    // The splitting can be far below f64 resolution, so the odd scan starts
    // from the even root at working precision.
    let odd = solve_ce(&ev, model, Parity::Odd, &even.lo, hint.map(|h| &h.odd))?;
    Ok(EnergyPair {
        even,
        odd,
        digits: prec.digits(),
        c: model.c,
    })
}

/// Precision-escalation settings for [`continuous_gap_for`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSolver {
    pub precision: PrecisionPolicy,
    pub digit_cap: u32,
}

impl Default for GapSolver {
    fn default() -> Self {
        Self {
            precision: PrecisionPolicy::default(),
            digit_cap: DEFAULT_DIGIT_CAP,
        }
    }
}

impl GapSolver {
    pub fn new(precision: PrecisionPolicy) -> Self {
        Self {
            precision,
            ..Self::default()
        }
    }

    pub fn with_digit_cap(mut self, cap: u32) -> Self {
        self.digit_cap = cap;
        self
    }
}

/// Continuous gap of an arbitrary model with adaptive precision.
///
/// Digits start at [`ContinuousModel::initial_digits`] and double until the
/// gap changes by less than [`GAP_REL_CHANGE`] relative; the record stores
/// the lower of the two agreeing precisions.
pub fn continuous_gap_for(model: &ContinuousModel, solver: &GapSolver) -> Result<GapRecord> {
    model.check_tunneling()?;
    let mut digits = model.initial_digits(solver.precision.digits());
    if digits > solver.digit_cap {
        return Err(Error::PrecisionCeiling {
            needed: digits,
            cap: solver.digit_cap,
        });
    }
    let mut prec = solver.precision.with_digits(digits)?;
    let mut pair = solve_pair(model, &prec, None)?;
    let mut gap = positive_gap(&pair, model)?;
    loop {
        let next = digits * 2;
        if next > solver.digit_cap {
            return Err(Error::PrecisionCeiling {
                needed: next,
                cap: solver.digit_cap,
            });
        }
        let next_prec = solver.precision.with_digits(next)?;
        let next_pair = solve_pair(model, &next_prec, Some(&pair))?;
        let next_gap = positive_gap(&next_pair, model)?;
        let change = Float::with_val(next_prec.bits(), &next_gap - &gap).abs() / &next_gap;
        if change.to_f64() < GAP_REL_CHANGE {
            let log_gap = gap.ln().to_f64();
            return GapRecord::continuous(model.n, model.alpha, log_gap, prec.digits());
        }
        digits = next;
        prec = next_prec;
        pair = next_pair;
        gap = next_gap;
    }
}

fn positive_gap(pair: &EnergyPair, model: &ContinuousModel) -> Result<Float> {
    let gap = pair.gap();
    if gap <= 0 {
        return Err(Error::NoRoot(format!(
            "odd root not above even root at n = {} ({} digits)",
            model.n, pair.digits
        )));
    }
    Ok(gap)
}

/// Continuous gap at `(n, alpha)` with explicit constants.
pub fn continuous_gap(
    n: f64,
    alpha: f64,
    omega: f64,
    c: f64,
    prec: &PrecisionPolicy,
) -> Result<GapRecord> {
    let model = ContinuousModel::new(n, alpha)?.with_constants(omega, c)?;
    continuous_gap_for(&model, &GapSolver::new(*prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol(d: u32) -> PrecisionPolicy {
        PrecisionPolicy::new(d).unwrap()
    }

    #[test]
    fn model_derived_quantities() {
        let m = ContinuousModel::new(1e4, 0.3).unwrap();
        let eps = 2e-4;
        assert_eq!(m.epsilon(), eps);
        assert!((m.half_width() - eps.powf(0.7) / 2.0).abs() < 1e-18);
        assert!((m.barrier_height() - DEFAULT_OMEGA * eps.powf(0.7)).abs() < 1e-15);
        let z0 = (2.0 * DEFAULT_OMEGA / eps).sqrt() * m.half_width();
        assert!((m.z0() - z0).abs() < 1e-12);
    }

    #[test]
    fn alpha_bounds_are_exclusive() {
        assert!(matches!(ContinuousModel::new(1e4, 0.25), Err(Error::Regime(_))));
        assert!(matches!(ContinuousModel::new(1e4, 0.5), Err(Error::Regime(_))));
        assert!(ContinuousModel::new(-1.0, 0.3).is_err());
    }

    #[test]
    fn small_n_is_outside_tunneling_regime() {
        let m = ContinuousModel::new(50.0, 0.3).unwrap();
        assert!(matches!(m.check_tunneling(), Err(Error::Regime(_))));
        let r = continuous_gap(50.0, 0.3, DEFAULT_OMEGA, default_c(), &pol(30));
        assert!(matches!(r, Err(Error::Regime(_))));
        let edge = tunneling_min_n(0.3);
        assert!(ContinuousModel::new(edge * 0.999, 0.3).unwrap().check_tunneling().is_err());
        assert!(ContinuousModel::new(edge * 1.001, 0.3).unwrap().check_tunneling().is_ok());
    }

    #[test]
    fn energy_above_barrier_is_a_regime_error() {
        let m = ContinuousModel::new(1e4, 0.3).unwrap();
        let p = pol(30);
        let top = m.barrier_top_ce() / m.c();
        let e = p.float(top * 1.01);
        assert!(matches!(matching_function(&m, Parity::Even, &e, &p), Err(Error::Regime(_))));
    }

    #[test]
    fn harmonic_limit_roots() {
        let m = ContinuousModel::new(1e4, 0.3).unwrap().with_half_width(0.0).unwrap();
        let p = pol(30);
        let even = solve_parity_energy(&m, Parity::Even, &p).unwrap();
        let odd = solve_parity_energy(&m, Parity::Odd, &p).unwrap();
        let c = default_c();
        assert!((even.to_f64() * c - DEFAULT_OMEGA).abs() < 1e-15);
        assert!((odd.to_f64() * c - 3.0 * DEFAULT_OMEGA).abs() < 1e-15);
    }

    #[test]
    fn harmonic_limit_gap() {
        let m = ContinuousModel::new(1e4, 0.3).unwrap().with_half_width(0.0).unwrap();
        let r = continuous_gap_for(&m, &GapSolver::new(pol(30))).unwrap();
        assert!((r.gap() - (3f64.sqrt() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn even_below_odd() {
        let p = pol(30);
        for (n, alpha) in [(1e3, 0.3), (1e5, 0.28), (1e4, 0.4)] {
            let m = ContinuousModel::new(n, alpha).unwrap();
            let pair = solve_pair(&m, &p, None).unwrap();
            assert!(pair.energy(Parity::Even) < pair.energy(Parity::Odd), "n={n} alpha={alpha}");
        }
    }

    #[test]
    fn final_bracket_straddles_root() {
        let m = ContinuousModel::new(1e4, 0.3).unwrap();
        let p = pol(30);
        for parity in [Parity::Even, Parity::Odd] {
            let b = solve_parity_bracket(&m, parity, &p).unwrap();
            let c = m.c();
            let lo = matching_function(&m, parity, &(b.lo.clone() / c), &p).unwrap();
            let hi = matching_function(&m, parity, &(b.hi.clone() / c), &p).unwrap();
            assert!(sign(&lo) * sign(&hi) <= 0);
        }
    }

    #[test]
    fn precision_ceiling_is_reported() {
        let m = ContinuousModel::new(1e25, 0.45).unwrap();
        let r = continuous_gap_for(&m, &GapSolver::default());
        assert!(matches!(r, Err(Error::PrecisionCeiling { .. })), "{r:?}");
    }

    #[test]
    fn splitting_below_double_resolution() {
        // At alpha = 0.45, n = 1e9 the relative splitting is about 1e-19.
        let logs: Vec<f64> = [1e8, 1e9, 1e10]
            .iter()
            .map(|&n| {
                continuous_gap(n, 0.45, DEFAULT_OMEGA, default_c(), &pol(30))
                    .unwrap()
                    .log_gap()
                    .unwrap()
            })
            .collect();
        assert!(logs[0] > logs[1] && logs[1] > logs[2], "{logs:?}");
        assert!((logs[1] + 41.61).abs() < 0.05, "{logs:?}");
    }
}
