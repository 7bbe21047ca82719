use proptest::prelude::*;
use tunnelgap::analysis::{
    derivative_ratio, exponential_fit, log_grid, power_fit, threshold_n_ratio, FitModel,
    ScalingPoint, ScalingSeries,
};
use tunnelgap::Method;

fn series(ns: &[f64], f: impl Fn(f64) -> f64) -> ScalingSeries {
    let points = ns.iter().map(|&n| ScalingPoint { n, log_gap: f(n) }).collect();
    ScalingSeries::new(0.3, Method::Continuous, points).unwrap()
}

fn power_params(s: &ScalingSeries) -> (f64, f64) {
    match power_fit(s).unwrap().model {
        FitModel::Power { ln_a, p, .. } => (ln_a, p),
        m => panic!("unexpected model {m:?}"),
    }
}

/// Truncation error of the central-difference ratio on a pure stretched
/// exponential with grid step `h` in `ln n`.
fn ratio_bias(q: f64, h: f64) -> f64 {
    let t = q * h;
    q * (1.0 - 2.0 * (t.cosh() - 1.0) / (t * t) * t / t.sinh())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_fit_recovers_exact_law(ln_a in -5.0f64..5.0, p in 0.0f64..2.0, lo in 1.0f64..4.0) {
        let ns = log_grid(10f64.powf(lo), 10f64.powf(lo + 2.0), 16).unwrap();
        let s = series(&ns, |n| ln_a - p * n.ln());
        let (fitted_ln_a, fitted) = power_params(&s);
        prop_assert!((fitted - p).abs() < 1e-10);
        prop_assert!((fitted_ln_a - ln_a).abs() < 1e-9);
    }

    #[test]
    fn power_fit_is_idempotent(noise in prop::collection::vec(-0.1f64..0.1, 33)) {
        let ns = log_grid(1e3, 1e5, 16).unwrap();
        let s = series(&ns, |n| {
            let i = ns.iter().position(|&m| m == n).unwrap();
            1.0 - 0.4 * n.ln() + noise[i]
        });
        let (ln_a, p) = power_params(&s);
        let refit = series(&ns, |n| ln_a - p * n.ln());
        let (ln_a2, p2) = power_params(&refit);
        prop_assert!((p2 - p).abs() < 1e-10);
        prop_assert!((ln_a2 - ln_a).abs() < 1e-9);
    }

    #[test]
    fn gap_rescaling_only_moves_prefactor(shift in -20.0f64..20.0, q in 0.05f64..0.6) {
        let ns = log_grid(1e2, 1e6, 16).unwrap();
        let base = series(&ns, |n| -0.5 * n.powf(q) - 0.1 * n.ln());
        let moved = series(&ns, |n| shift - 0.5 * n.powf(q) - 0.1 * n.ln());
        let (ln_a, p) = power_params(&base);
        let (ln_a2, p2) = power_params(&moved);
        prop_assert!((p2 - p).abs() < 1e-9);
        prop_assert!((ln_a2 - ln_a - shift).abs() < 1e-8 * ln_a.abs().max(1.0));
        let r = derivative_ratio(&base).unwrap();
        let r2 = derivative_ratio(&moved).unwrap();
        for (x, y) in r.points.iter().zip(&r2.points) {
            prop_assert!((x.r - y.r).abs() < 1e-8 * x.r.abs().max(1.0));
        }
    }

    #[test]
    fn ratio_separates_power_from_exponential(
        ln_b in -3.0f64..3.0,
        c in 0.1f64..3.0,
        q in 0.05f64..0.35,
        p in 0.05f64..1.5,
    ) {
        let ns = log_grid(1e2, 1e8, 16).unwrap();
        let h = std::f64::consts::LN_10 / 16.0;
        let power = derivative_ratio(&series(&ns, |n| ln_b - p * n.ln())).unwrap();
        prop_assert!(power.points.iter().all(|pt| pt.r.abs() < 1e-6));
        let exp = derivative_ratio(&series(&ns, |n| ln_b - c * n.powf(q))).unwrap();
        let bound = ratio_bias(q, h).abs() + 1e-7;
        for pt in &exp.points {
            prop_assert!((pt.r - q).abs() < bound, "n={} r={} q={q}", pt.n, pt.r);
        }
    }

    #[test]
    fn ratio_error_shrinks_with_grid_refinement(q in 0.1f64..0.5) {
        let err = |ppd: u32| {
            let ns = log_grid(1e3, 1e7, ppd).unwrap();
            let r = derivative_ratio(&series(&ns, |n| -n.powf(q))).unwrap();
            r.points.iter().map(|pt| (pt.r - q).abs()).fold(0.0, f64::max)
        };
        let (coarse, fine) = (err(8), err(16));
        prop_assert!(fine < coarse / 3.5, "8 ppd {coarse:e}, 16 ppd {fine:e}");
    }

    #[test]
    fn exponential_fit_recovers_stretch_exponent(q in 0.1f64..0.8, c in 0.2f64..2.0) {
        let ns = log_grid(1e2, 1e6, 16).unwrap();
        let fit = exponential_fit(&series(&ns, |n| 0.7 - c * n.powf(q))).unwrap();
        match fit.model {
            FitModel::Exponential { c: c2, q: q2, .. } => {
                prop_assert!((q2 - q).abs() < 1e-6, "q {q2} vs {q}");
                prop_assert!((c2 / c - 1.0).abs() < 1e-4);
            }
            m => prop_assert!(false, "unexpected model {m:?}"),
        }
        prop_assert!(!fit.at_bracket_edge);
    }

    #[test]
    fn threshold_inverts_monotone_ratio(v in 0.2f64..0.95, k in 0.5f64..3.0, gamma in 0.05f64..0.3) {
        // ratio(n) = 1 - k n^-gamma crosses v at n = (k / (1 - v))^(1/gamma)
        let exact = (k / (1.0 - v)).powf(1.0 / gamma);
        prop_assume!(exact > 2.0 && exact < 1e25);
        let ratio = |n: f64| Ok(1.0 - k * n.powf(-gamma));
        let n = threshold_n_ratio(0.3, v, ratio, 1.0, 1e30).unwrap();
        prop_assert!((n / exact - 1.0).abs() < 1e-3, "{n} vs {exact}");
    }
}

#[test]
fn calibrated_ratio_at_default_density() {
    let ns = log_grid(1e2, 1e8, 16).unwrap();
    for q in [0.1, 0.175, 0.25] {
        let r = derivative_ratio(&series(&ns, |n| 2.0 - 1.3 * n.powf(q))).unwrap();
        let worst = r.points.iter().map(|pt| (pt.r - q).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-4, "q={q}: {worst:e}");
    }
}
