use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a minimum gap was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exact diagonalization of the symmetric-subspace qubit Hamiltonian.
    Discrete,
    /// Roots of the continuous-well matching condition.
    Continuous,
    /// Leading-order large-n expression.
    Asymptotic1,
    /// Leading plus next-order large-n expression.
    Asymptotic2,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Discrete,
        Method::Continuous,
        Method::Asymptotic1,
        Method::Asymptotic2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Discrete => "discrete",
            Method::Continuous => "continuous",
            Method::Asymptotic1 => "asymptotic1",
            Method::Asymptotic2 => "asymptotic2",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method '{s}'")))
    }
}

/// One minimum-gap result for a given `(n, alpha, method)`.
///
/// `log_gap` is set whenever the solver knows `ln g_min` directly; for
/// exponentially small gaps `gap` may underflow to zero and `log_gap` is then
/// the only usable value. Prefer [`GapRecord::ln_gap`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    n: f64,
    alpha: f64,
    method: Method,
    gap: f64,
    log_gap: Option<f64>,
    s_star: Option<f64>,
    digits_used: Option<u32>,
}

impl GapRecord {
    pub fn discrete(n: u64, alpha: f64, gap: f64, s_star: f64) -> Result<Self> {
        if !(gap > 0.0) || !gap.is_finite() {
            return Err(Error::Degenerate(format!("discrete gap {gap} at n = {n} is not positive")));
        }
        Ok(Self {
            n: n as f64,
            alpha,
            method: Method::Discrete,
            gap,
            log_gap: None,
            s_star: Some(s_star),
            digits_used: None,
        })
    }

    pub fn continuous(n: f64, alpha: f64, log_gap: f64, digits_used: u32) -> Result<Self> {
        Self::from_log(n, alpha, Method::Continuous, log_gap, Some(digits_used))
    }

    pub fn asymptotic(n: f64, alpha: f64, method: Method, log_gap: f64) -> Result<Self> {
        debug_assert!(matches!(method, Method::Asymptotic1 | Method::Asymptotic2));
        Self::from_log(n, alpha, method, log_gap, None)
    }

    fn from_log(
        n: f64,
        alpha: f64,
        method: Method,
        log_gap: f64,
        digits_used: Option<u32>,
    ) -> Result<Self> {
        if !log_gap.is_finite() {
            return Err(Error::Degenerate(format!("{method} gap at n = {n} is not positive")));
        }
        Ok(Self {
            n,
            alpha,
            method,
            gap: log_gap.exp(),
            log_gap: Some(log_gap),
            s_star: None,
            digits_used,
        })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// The gap in energy units of `H`; zero when it underflows `f64`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn log_gap(&self) -> Option<f64> {
        self.log_gap
    }

    pub fn ln_gap(&self) -> f64 {
        self.log_gap.unwrap_or_else(|| self.gap.ln())
    }

    pub fn s_star(&self) -> Option<f64> {
        self.s_star
    }

    pub fn digits_used(&self) -> Option<u32> {
        self.digits_used
    }
}
