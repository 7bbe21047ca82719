use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::log_grid;
use crate::asymptotic::{gap_first_order, gap_second_order};
use crate::continuous::{continuous_gap, default_c, DEFAULT_OMEGA};
use crate::discrete::{
    min_gap_discrete, width_transitions, BarrierShape, BarrierSpec, DEFAULT_REL_TOL, DEFAULT_S_GRID,
};
use crate::error::{Error, Result};
use crate::record::{GapRecord, Method};
use crate::specfun::PrecisionPolicy;

use super::args::{NPolicy, Options};
use super::{parse_number_list, CliError};

pub const DEFAULT_DIGITS: u32 = 30;
pub const DEFAULT_DISCRETE_CAP: f64 = 2e6;

/// Everything besides `(n, alpha, method)` that a gap computation needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSettings {
    pub barrier: BarrierShape,
    pub height_coeff: f64,
    pub width_coeff: f64,
    pub omega: f64,
    pub c: f64,
    pub digits: u32,
}

impl Default for GapSettings {
    fn default() -> Self {
        Self {
            barrier: BarrierShape::Square,
            height_coeff: 1.0,
            width_coeff: 1.0,
            omega: DEFAULT_OMEGA,
            c: default_c(),
            digits: DEFAULT_DIGITS,
        }
    }
}

impl GapSettings {
    pub fn from_options(o: &Options) -> Self {
        let d = Self::default();
        Self {
            barrier: o.barrier.unwrap_or(d.barrier),
            height_coeff: o.height_coeff.unwrap_or(d.height_coeff),
            width_coeff: o.width_coeff.unwrap_or(d.width_coeff),
            omega: o.omega.unwrap_or(d.omega),
            c: o.c.unwrap_or(d.c),
            digits: o.digits.unwrap_or(d.digits),
        }
    }

    pub fn barrier_spec(&self, alpha: f64) -> Result<BarrierSpec> {
        BarrierSpec::new(self.barrier, alpha)?
            .with_height_coeff(self.height_coeff)?
            .with_width_coeff(self.width_coeff)
    }

    pub fn precision(&self) -> Result<PrecisionPolicy> {
        PrecisionPolicy::new(self.digits)
    }
}

/// `n` as a qubit count, or a domain error.
pub fn integer_n(n: f64) -> Result<u64> {
    if n >= 1.0 && n.fract() == 0.0 && n <= 2f64.powi(53) {
        Ok(n as u64)
    } else {
        Err(Error::Domain(format!("discrete method needs a positive integer n, got {n}")))
    }
}

pub fn compute_gap(method: Method, n: f64, alpha: f64, s: &GapSettings) -> Result<GapRecord> {
    match method {
        Method::Discrete => {
            let n = integer_n(n)?;
            let spec = s.barrier_spec(alpha)?;
            min_gap_discrete(n, Some(&spec), DEFAULT_S_GRID, DEFAULT_REL_TOL)
        }
        Method::Continuous => continuous_gap(n, alpha, s.omega, s.c, &s.precision()?),
        Method::Asymptotic1 => gap_first_order(n, alpha, s.omega, s.c),
        Method::Asymptotic2 => gap_second_order(n, alpha, s.omega, s.c, &s.precision()?),
    }
}

/// One output row: a record or the error that replaced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: f64,
    pub alpha: f64,
    pub method: Method,
    pub result: Result<GapRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub n_min: f64,
    pub n_max: f64,
    pub points_per_decade: u32,
    pub alphas: Vec<f64>,
    pub method: Method,
    pub settings: GapSettings,
    pub n_policy: NPolicy,
    pub discrete_cap: f64,
}

impl SweepPlan {
    /// Builds a plan from flags. `alphas` are sorted and deduplicated.
    pub fn from_options(o: &Options) -> std::result::Result<Self, CliError> {
        let method = o.method.ok_or_else(|| CliError::usage("--method is required"))?;
        let mut alphas = match (&o.alphas, o.alpha) {
            (Some(list), _) => parse_number_list(list)?,
            (None, Some(a)) => vec![a],
            (None, None) => return Err(CliError::usage("--alpha or --alphas is required")),
        };
        alphas.sort_by(f64::total_cmp);
        alphas.dedup();
        let plan = Self {
            n_min: o.nmin.ok_or_else(|| CliError::usage("--nmin is required"))?,
            n_max: o.nmax.ok_or_else(|| CliError::usage("--nmax is required"))?,
            points_per_decade: o.points_per_decade.unwrap_or(16),
            alphas,
            method,
            settings: GapSettings::from_options(o),
            n_policy: o.n_policy.unwrap_or(match method {
                Method::Discrete => NPolicy::Round,
                _ => NPolicy::Exact,
            }),
            discrete_cap: o.discrete_cap.unwrap_or(DEFAULT_DISCRETE_CAP),
        };
        plan.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n_min > 0.0 && self.n_min < self.n_max && self.n_max.is_finite()) {
            return Err(Error::Domain(format!(
                "need 0 < nmin < nmax, got {} and {}",
                self.n_min, self.n_max
            )));
        }
        if self.points_per_decade == 0 {
            return Err(Error::Domain("points per decade must be positive".into()));
        }
        if self.alphas.is_empty() {
            return Err(Error::Domain("no alpha values".into()));
        }
        if self.method == Method::Discrete {
            if self.n_policy == NPolicy::Exact {
                return Err(Error::Domain(
                    "discrete method needs --n-policy round or transitions".into(),
                ));
            }
            if self.n_max > self.discrete_cap {
                return Err(Error::Domain(format!(
                    "nmax {} exceeds the discrete cap {}",
                    self.n_max, self.discrete_cap
                )));
            }
        }
        Ok(())
    }

    /// Problem sizes for one `alpha`, increasing.
    pub fn n_values(&self, alpha: f64) -> Result<Vec<f64>> {
        match self.n_policy {
            NPolicy::Exact => log_grid(self.n_min, self.n_max, self.points_per_decade),
            NPolicy::Round => {
                let mut ns: Vec<f64> = log_grid(self.n_min, self.n_max, self.points_per_decade)?
                    .into_iter()
                    .map(|n| n.round().max(1.0))
                    .collect();
                ns.dedup();
                Ok(ns)
            }
            NPolicy::Transitions => {
                let spec = self.settings.barrier_spec(alpha)?;
                let lo = self.n_min.ceil().max(1.0) as u64;
                let hi = self.n_max.floor() as u64;
                Ok(width_transitions(&spec, lo, hi).into_iter().map(|n| n as f64).collect())
            }
        }
    }

    /// `(alpha, n)` cells in output order: by alpha, then n.
    pub fn cells(&self) -> Result<Vec<(f64, f64)>> {
        let mut cells = Vec::new();
        for &alpha in &self.alphas {
            cells.extend(self.n_values(alpha)?.into_iter().map(|n| (alpha, n)));
        }
        Ok(cells)
    }

    /// Computes every cell in parallel; the result order matches
    /// [`SweepPlan::cells`] regardless of scheduling.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        Ok(self
            .cells()?
            .into_par_iter()
            .map(|(alpha, n)| SweepRow {
                n,
                alpha,
                method: self.method,
                result: compute_gap(self.method, n, alpha, &self.settings),
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(method: Method, policy: NPolicy) -> SweepPlan {
        SweepPlan {
            n_min: 1e2,
            n_max: 1e3,
            points_per_decade: 16,
            alphas: vec![0.3],
            method,
            settings: GapSettings::default(),
            n_policy: policy,
            discrete_cap: DEFAULT_DISCRETE_CAP,
        }
    }

    #[test]
    fn seventeen_points_per_decade_inclusive() {
        let p = plan(Method::Asymptotic1, NPolicy::Exact);
        assert_eq!(p.cells().unwrap().len(), 17);
        assert!(p.run().unwrap().iter().all(|r| r.result.is_ok()));
    }

    #[test]
    fn discrete_plans_are_validated() {
        assert!(plan(Method::Discrete, NPolicy::Exact).validate().is_err());
        let mut p = plan(Method::Discrete, NPolicy::Round);
        p.n_max = 3e6;
        assert!(p.validate().is_err());
        let p = plan(Method::Discrete, NPolicy::Round);
        let ns = p.n_values(0.3).unwrap();
        assert!(ns.iter().all(|n| n.fract() == 0.0));
        assert!(ns.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn integer_n_rejects_fractions() {
        assert!(integer_n(1.5).is_err());
        assert!(integer_n(0.0).is_err());
        assert_eq!(integer_n(12.0).unwrap(), 12);
    }
}
