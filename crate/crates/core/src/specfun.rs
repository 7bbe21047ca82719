//! Configurable-precision special functions.
//!
//! Everything here works on MPFR floats whose precision is derived from a
//! [`PrecisionPolicy`]. The parabolic cylinder function is assembled from two
//! Kummer series, which is the right representation for the small matching
//! arguments the continuous solver needs: the argument shrinks as the system
//! grows, so the series get shorter exactly where the problem gets harder.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 16;

/// Working precision and series-truncation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPolicy {
    digits: u32,
    max_terms: usize,
    tail_tol_log10: f64,
}

impl PrecisionPolicy {
    pub const MIN_DIGITS: u32 = 16;

    /// A policy with `digits` decimal digits, a 200 000-term series cap and
    /// a tail tolerance of `10^-(digits + 2)`.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Domain(format!(
                "precision must be at least {} digits, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Self {
            digits,
            max_terms: 200_000,
            tail_tol_log10: -(f64::from(digits) + 2.0),
        })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be positive".into()));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    /// Sets the tail tolerance as a base-10 exponent. It must be below
    /// `-digits / 2`.
    pub fn with_tail_tol_log10(mut self, log10_tol: f64) -> Result<Self> {
        if !(log10_tol < -f64::from(self.digits) / 2.0) {
            return Err(Error::Domain(format!(
                "tail tolerance 1e{log10_tol} is not below 1e-{}",
                f64::from(self.digits) / 2.0
            )));
        }
        self.tail_tol_log10 = log10_tol;
        Ok(self)
    }

    /// Same series settings at a different digit count. The tail tolerance
    /// keeps its offset relative to the digit count.
    pub fn with_digits(&self, digits: u32) -> Result<Self> {
        let offset = self.tail_tol_log10 + f64::from(self.digits);
        Self::new(digits)?
            .with_max_terms(self.max_terms)?
            .with_tail_tol_log10(offset.min(-2.0) - f64::from(digits))
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn tail_tol_log10(&self) -> f64 {
        self.tail_tol_log10
    }

    /// Binary precision corresponding to `digits`, plus guard bits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits) * LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Converts a value into a float at this policy's precision.
    pub fn float<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::new(30).expect("30 digits is a valid policy")
    }
}

fn is_nonpositive_integer(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

/// `1 / Gamma(x)`, exactly zero at the poles of Gamma.
pub fn recip_gamma(x: &Float) -> Float {
    if is_nonpositive_integer(x) {
        return Float::with_val(x.prec(), 0);
    }
    Float::with_val(x.prec(), x.gamma_ref()).recip()
}

/// Extra bits that absorb the cancellation of an alternating series in `z`.
fn series_guard_bits(z: &Float) -> u32 {
    let mag = z.to_f64().abs();
    (2.0 * mag * std::f64::consts::LOG2_E).ceil() as u32 + 8
}

/// Kummer's confluent hypergeometric function `M(a, b, z)`.
///
/// The series is summed at `prec` plus guard bits and is accepted once three
/// consecutive terms fall below `tail_tol` relative to the partial sum.
pub fn kummer_m(a: &Float, b: &Float, z: &Float, prec: &PrecisionPolicy) -> Result<Float> {
    let sum = kummer_series(a, b, z, prec, prec.bits())?;
    Ok(Float::with_val(prec.bits(), sum))
}

fn kummer_series(
    a: &Float,
    b: &Float,
    z: &Float,
    prec: &PrecisionPolicy,
    bits: u32,
) -> Result<Float> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain(format!(
            "Kummer M is undefined for b = {}",
            b.to_f64()
        )));
    }
    if !z.is_finite() {
        return Err(Error::Domain("Kummer M needs a finite argument".into()));
    }
    let bits = bits + series_guard_bits(z);
    let a = Float::with_val(bits, a);
    let b = Float::with_val(bits, b);
    let z = Float::with_val(bits, z);
    let tol = Float::with_val(bits, prec.tail_tol_log10()).exp10();

    let mut term = Float::with_val(bits, 1);
    let mut sum = Float::with_val(bits, 1);
    let mut small_run = 0;
    let mut num = Float::new(bits);
    let mut den = Float::new(bits);
    for k in 0..prec.max_terms() {
        let kf = k as u32;
        num.assign(&a + kf);
        num *= &z;
        den.assign(&b + kf);
        den *= kf + 1;
        term *= &num;
        term /= &den;
        sum += &term;

        let limit = Float::with_val(bits, sum.abs_ref()) * &tol;
        if Float::with_val(bits, term.abs_ref()) <= limit {
            small_run += 1;
            if small_run == 3 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Convergence(format!(
        "Kummer M({}, {}, {}) needs more than {} terms",
        a.to_f64(),
        b.to_f64(),
        z.to_f64(),
        prec.max_terms()
    )))
}

/// Working precision for `D_nu(z)`: the two Kummer terms grow like
/// `exp(z^2/2)` while the result decays like `exp(-z^2/4)`.
fn pcf_bits(z: &Float, prec: &PrecisionPolicy) -> u32 {
    let z = z.to_f64();
    prec.bits() + (0.75 * z * z * std::f64::consts::LOG2_E).ceil() as u32 + GUARD_BITS
}

fn check_pcf_args(nu: &Float, z: &Float) -> Result<()> {
    if !nu.is_finite() || !z.is_finite() {
        return Err(Error::Domain("parabolic cylinder arguments must be finite".into()));
    }
    if *z < 0 {
        return Err(Error::Domain(format!(
            "parabolic cylinder argument must be non-negative, got {}",
            z.to_f64()
        )));
    }
    Ok(())
}

/// `D_nu(z)` at `bits` without argument checks or final rounding.
fn pcf_raw(nu: &Float, z: &Float, prec: &PrecisionPolicy, bits: u32) -> Result<Float> {
    let nu = Float::with_val(bits, nu);
    let z = Float::with_val(bits, z);
    let half = Float::with_val(bits, 0.5);
    let x = Float::with_val(bits, z.square_ref()) / 2u32;

    let a_even = Float::with_val(bits, -&nu) / 2u32;
    let a_odd = Float::with_val(bits, 1 - &nu) / 2u32;
    let r_even = recip_gamma(&a_odd);
    let r_odd = recip_gamma(&a_even);

    let mut bracket = Float::with_val(bits, 0);
    if !r_even.is_zero() {
        let m = kummer_series(&a_even, &half, &x, prec, bits)?;
        bracket += m * &r_even;
    }
    if !r_odd.is_zero() && !z.is_zero() {
        let b = Float::with_val(bits, 1.5);
        let m = kummer_series(&a_odd, &b, &x, prec, bits)?;
        let sqrt2 = Float::with_val(bits, 2).sqrt();
        bracket -= m * &r_odd * sqrt2 * &z;
    }

    let pow2 = Float::with_val(bits, 2).pow(Float::with_val(bits, &nu / 2u32));
    let sqrt_pi = Float::with_val(bits, Constant::Pi).sqrt();
    let gauss = (Float::with_val(bits, -&x) / 2u32).exp();
    Ok(pow2 * sqrt_pi * gauss * bracket)
}

/// Parabolic cylinder function `D_nu(z)` for real `nu` and `z >= 0`.
pub fn pcf_d(nu: &Float, z: &Float, prec: &PrecisionPolicy) -> Result<Float> {
    check_pcf_args(nu, z)?;
    let d = pcf_raw(nu, z, prec, pcf_bits(z, prec))?;
    Ok(Float::with_val(prec.bits(), d))
}

/// `dD_nu/dz` from `D'_nu(z) = nu D_{nu-1}(z) - (z/2) D_nu(z)`.
pub fn pcf_d_prime(nu: &Float, z: &Float, prec: &PrecisionPolicy) -> Result<Float> {
    let (_, dp) = pcf_d_with_prime(nu, z, prec)?;
    Ok(dp)
}

/// `(D_nu(z), D'_nu(z))` evaluated together.
pub fn pcf_d_with_prime(nu: &Float, z: &Float, prec: &PrecisionPolicy) -> Result<(Float, Float)> {
    check_pcf_args(nu, z)?;
    let bits = pcf_bits(z, prec);
    let d = pcf_raw(nu, z, prec, bits)?;
    let nu_m1 = Float::with_val(bits, nu - 1u32);
    let d_m1 = pcf_raw(&nu_m1, z, prec, bits)?;
    let mut dp = Float::with_val(bits, nu) * d_m1;
    dp -= Float::with_val(bits, z) / 2u32 * &d;
    Ok((Float::with_val(prec.bits(), d), Float::with_val(prec.bits(), dp)))
}

/// Digamma `psi_0(x)` by downward recurrence into the asymptotic region
/// `x > 10 * digits`, then the Bernoulli-number expansion there.
pub fn digamma(x: &Float, prec: &PrecisionPolicy) -> Result<Float> {
    if !x.is_finite() {
        return Err(Error::Domain("digamma needs a finite argument".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("digamma has a pole at {}", x.to_f64())));
    }
    let bits = prec.bits() + 32;
    let threshold = 10.0 * f64::from(prec.digits());

    let mut y = Float::with_val(bits, x);
    let mut shift = Float::with_val(bits, 0);
    while y.to_f64() <= threshold {
        shift += Float::with_val(bits, y.recip_ref());
        y += 1u32;
    }

    // psi(y) ~ ln y - 1/(2y) - sum_k B_2k / (2k y^2k), with
    // B_2k / (2k) = (-1)^(k+1) 2 (2k-1)! zeta(2k) / (2 pi)^2k.
    let mut psi = Float::with_val(bits, y.ln_ref());
    psi -= Float::with_val(bits, y.recip_ref()) / 2u32;

    let two_pi_y = Float::with_val(bits, Constant::Pi) * 2u32 * &y;
    let inv_sq = Float::with_val(bits, two_pi_y.square_ref()).recip();
    let tol = Float::with_val(bits, -(f64::from(prec.digits()) + 4.0)).exp10();
    // scale = 2 (2k-1)! / (2 pi y)^2k, starting at k = 1
    let mut scale = Float::with_val(bits, &inv_sq * 2u32);
    let mut prev = Float::with_val(bits, f64::INFINITY);
    for k in 1u32..100_000 {
        let zeta = Float::with_val(bits, 2 * k).zeta();
        let term = Float::with_val(bits, &scale * &zeta);
        if k % 2 == 1 {
            psi -= &term;
        } else {
            psi += &term;
        }
        let limit = Float::with_val(bits, psi.abs_ref()) * &tol;
        if term <= limit {
            psi -= shift;
            return Ok(Float::with_val(prec.bits(), psi));
        }
        if term >= prev {
            break;
        }
        prev = term;
        scale *= (2 * k) * (2 * k + 1);
        scale *= &inv_sq;
    }
    Err(Error::Convergence(format!(
        "digamma asymptotic series stalled at x = {}",
        x.to_f64()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32) -> PrecisionPolicy {
        PrecisionPolicy::new(d).unwrap()
    }

    fn rel(a: &Float, b: f64) -> f64 {
        ((a.to_f64() - b) / b).abs()
    }

    #[test]
    fn policy_invariants() {
        assert!(PrecisionPolicy::new(15).is_err());
        let pol = p(20);
        assert!(pol.with_tail_tol_log10(-9.0).is_err());
        assert!(pol.with_tail_tol_log10(-10.5).is_ok());
        assert!(pol.with_max_terms(0).is_err());
        let wide = pol.with_digits(40).unwrap();
        assert_eq!(wide.digits(), 40);
        assert_eq!(wide.tail_tol_log10(), -42.0);
    }

    #[test]
    fn kummer_trivial_values() {
        let pol = p(30);
        let v = kummer_m(&pol.float(0.7), &pol.float(1.3), &pol.float(0), &pol).unwrap();
        assert_eq!(v, 1);
        let e = kummer_m(&pol.float(1), &pol.float(1), &pol.float(1), &pol).unwrap();
        assert!(rel(&e, std::f64::consts::E) < 1e-15);
    }

    #[test]
    fn kummer_rejects_pole_in_b() {
        let pol = p(20);
        let err = kummer_m(&pol.float(0.5), &pol.float(-2), &pol.float(0.1), &pol);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn kummer_hits_term_cap() {
        let pol = p(20).with_max_terms(5).unwrap();
        let err = kummer_m(&pol.float(0.5), &pol.float(1.5), &pol.float(30), &pol);
        assert!(matches!(err, Err(Error::Convergence(_))));
    }

    #[test]
    fn pcf_closed_forms() {
        let pol = p(30);
        let d0 = pcf_d(&pol.float(0), &pol.float(2.0), &pol).unwrap();
        assert!(rel(&d0, (-1.0f64).exp()) < 1e-15);
        let d1 = pcf_d(&pol.float(1), &pol.float(1.0), &pol).unwrap();
        assert!(rel(&d1, (-0.25f64).exp()) < 1e-15);
        let dp0 = pcf_d_prime(&pol.float(0), &pol.float(2.0), &pol).unwrap();
        assert!(rel(&dp0, -(-1.0f64).exp()) < 1e-15);
        let dp1 = pcf_d_prime(&pol.float(1), &pol.float(0), &pol).unwrap();
        assert!(rel(&dp1, 1.0) < 1e-15);
    }

    #[test]
    fn pcf_rejects_negative_argument() {
        let pol = p(20);
        assert!(pcf_d(&pol.float(0.5), &pol.float(-0.1), &pol).is_err());
    }

    #[test]
    fn recip_gamma_is_zero_at_poles() {
        let pol = p(20);
        for x in [0, -1, -2, -7] {
            assert!(recip_gamma(&pol.float(x)).is_zero());
        }
        let r = recip_gamma(&pol.float(0.5));
        assert!(rel(&r, 1.0 / std::f64::consts::PI.sqrt()) < 1e-15);
    }

    #[test]
    fn digamma_known_values() {
        let pol = p(30);
        let gamma = 0.577_215_664_901_532_9_f64;
        let ln2 = std::f64::consts::LN_2;
        let d1 = digamma(&pol.float(1), &pol).unwrap();
        assert!(rel(&d1, -gamma) < 1e-15);
        let dh = digamma(&pol.float(0.5), &pol).unwrap();
        assert!(rel(&dh, -gamma - 2.0 * ln2) < 1e-15);
        let dm = digamma(&pol.float(-0.5), &pol).unwrap();
        assert!((dm.to_f64() - (2.0 - gamma - 2.0 * ln2)).abs() < 1e-15);
        assert!(digamma(&pol.float(-3), &pol).is_err());
        assert!(digamma(&pol.float(0), &pol).is_err());
    }

    #[test]
    fn digamma_matches_mpfr_at_high_precision() {
        let pol = p(80);
        for x in [-2.75, -0.5, 0.125, 3.0, 17.5, 1234.5] {
            let ours = digamma(&pol.float(x), &pol).unwrap();
            let mpfr = Float::with_val(pol.bits() + 64, x).digamma();
            let diff = Float::with_val(pol.bits(), &ours - &mpfr).abs();
            let scale = Float::with_val(pol.bits(), mpfr.abs_ref()).max(&Float::with_val(pol.bits(), 1));
            assert!(diff / scale < Float::with_val(64, 1e-78), "x = {x}");
        }
    }
}
