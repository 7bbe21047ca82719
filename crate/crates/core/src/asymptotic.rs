//! Large-n closed forms for the minimum gap.
//!
//! With `eps = 2/n`:
//!
//! ```text
//! polynomial  (1/4 < alpha < 1/3): g1 = 8 sqrt(omega) / (c sqrt(pi)) eps^(2 alpha - 1/2)
//! exponential (1/3 < alpha < 1/2): g1 = 16 omega / (c sqrt(pi)) eps^(alpha/2) exp(-sqrt(omega) eps^((1 - 3 alpha)/2))
//! second order (polynomial):       g2 = g1 - 16 / (c pi) (ln 2 + psi_0(-1/2)) eps^(4 alpha - 1)
//! ```

use std::f64::consts::PI;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::{GapRecord, Method};
use crate::specfun::{digamma, PrecisionPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Constant,
    Polynomial,
    Exponential,
}

/// Scaling region of the gap for a barrier exponent `alpha`.
pub fn classify_region(alpha: f64) -> Result<Region> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1/2), got {alpha}")));
    }
    if alpha == 0.25 || alpha == 1.0 / 3.0 {
        return Err(Error::Boundary(alpha));
    }
    Ok(if alpha < 0.25 {
        Region::Constant
    } else if alpha < 1.0 / 3.0 {
        Region::Polynomial
    } else {
        Region::Exponential
    })
}

/// `ln 2 + psi_0(-1/2)`, which equals `2 - gamma - ln 2`.
fn log_two_plus_digamma(prec: &PrecisionPolicy) -> Result<f64> {
    let psi = digamma(&prec.float(-0.5), prec)?;
    let ln2 = Float::with_val(prec.bits(), 2u32).ln();
    Ok((psi + ln2).to_f64())
}

/// `kappa = 2 / sqrt(pi omega) (ln 2 + psi_0(-1/2))`.
pub fn kappa(omega: f64, prec: &PrecisionPolicy) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    Ok(2.0 / (PI * omega).sqrt() * log_two_plus_digamma(prec)?)
}

/// Constants of the expansion for one `(alpha, omega, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConstants {
    pub kappa: f64,
    pub second_order_coeff: f64,
    pub region: Region,
}

impl AsymptoticConstants {
    pub fn new(alpha: f64, omega: f64, c: f64, prec: &PrecisionPolicy) -> Result<Self> {
        let region = classify_region(alpha)?;
        let s = log_two_plus_digamma(prec)?;
        Ok(Self {
            kappa: 2.0 / (PI * omega).sqrt() * s,
            second_order_coeff: 16.0 / (c * PI) * s,
            region,
        })
    }
}

fn check_inputs(n: f64, omega: f64, c: f64) -> Result<()> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Domain(format!("n must be positive and finite, got {n}")));
    }
    if !(omega > 0.0 && c > 0.0) {
        return Err(Error::Domain(format!("omega and c must be positive, got {omega}, {c}")));
    }
    Ok(())
}

/// `ln g1`; finite for every `n` even where `g1` underflows.
pub fn log_gap_first_order(n: f64, alpha: f64, omega: f64, c: f64) -> Result<f64> {
    check_inputs(n, omega, c)?;
    let ln_eps = (2.0 / n).ln();
    match classify_region(alpha)? {
        Region::Polynomial => {
            let prefactor = 8.0 * omega.sqrt() / (c * PI.sqrt());
            Ok(prefactor.ln() + (2.0 * alpha - 0.5) * ln_eps)
        }
        Region::Exponential => {
            let prefactor = 16.0 * omega / (c * PI.sqrt());
            let barrier = omega.sqrt() * ((1.0 - 3.0 * alpha) / 2.0 * ln_eps).exp();
            Ok(prefactor.ln() + alpha / 2.0 * ln_eps - barrier)
        }
        Region::Constant => Err(Error::Regime(format!(
            "no asymptotic gap formula for the constant region (alpha = {alpha})"
        ))),
    }
}

/// Leading-order asymptotic gap.
pub fn gap_first_order(n: f64, alpha: f64, omega: f64, c: f64) -> Result<GapRecord> {
    let log_gap = log_gap_first_order(n, alpha, omega, c)?;
    GapRecord::asymptotic(n, alpha, Method::Asymptotic1, log_gap)
}

/// Leading plus next-order gap, polynomial region only.
pub fn gap_second_order(
    n: f64,
    alpha: f64,
    omega: f64,
    c: f64,
    prec: &PrecisionPolicy,
) -> Result<GapRecord> {
    check_inputs(n, omega, c)?;
    let consts = AsymptoticConstants::new(alpha, omega, c, prec)?;
    if consts.region != Region::Polynomial {
        return Err(Error::Regime(format!(
            "second-order gap is only known for 1/4 < alpha < 1/3, got {alpha}"
        )));
    }
    let eps = 2.0 / n;
    let first = 8.0 * omega.sqrt() / (c * PI.sqrt()) * eps.powf(2.0 * alpha - 0.5);
    let gap = first - consts.second_order_coeff * eps.powf(4.0 * alpha - 1.0);
    if !(gap > 0.0) {
        return Err(Error::NegativeGap { n });
    }
    GapRecord::asymptotic(n, alpha, Method::Asymptotic2, gap.ln())
}

/// `n(v) = 2 (kappa / (1 - v))^(1 / (2 alpha - 1/2))`: the size at which the
/// second-order expansion puts the exact-to-leading ratio at `v`.
pub fn n_threshold_estimate(v: f64, alpha: f64, omega: f64, prec: &PrecisionPolicy) -> Result<f64> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!("v must lie in (0, 1), got {v}")));
    }
    if classify_region(alpha)? != Region::Polynomial {
        return Err(Error::Regime(format!(
            "threshold estimate needs 1/4 < alpha < 1/3, got {alpha}"
        )));
    }
    let k = kappa(omega, prec)?;
    Ok(2.0 * (k / (1.0 - v)).powf(1.0 / (2.0 * alpha - 0.5)))
}

/// Large-n limit of `R = f''/f'` for `f = ln g_min`, `x = ln n`: zero for
/// power laws, `(3 alpha - 1)/2` in the exponential region.
pub fn ratio_target(alpha: f64) -> Result<f64> {
    Ok(match classify_region(alpha)? {
        Region::Exponential => (3.0 * alpha - 1.0) / 2.0,
        _ => 0.0,
    })
}
