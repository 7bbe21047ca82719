mod common;

use common::{c_default, finite_difference_gap, OMEGA};
use tunnelgap::continuous::{continuous_gap, continuous_gap_for, ContinuousModel, GapSolver};
use tunnelgap::PrecisionPolicy;

fn solver_log_gap(n: f64, alpha: f64) -> f64 {
    continuous_gap(n, alpha, OMEGA, c_default(), &PrecisionPolicy::default())
        .unwrap()
        .ln_gap()
}

#[test]
fn matches_finite_difference_well() {
    for &(n, alpha) in &[(1e3, 0.3), (1e4, 0.3), (1e8, 0.3), (1e3, 0.45), (1e5, 0.4)] {
        let fd = finite_difference_gap(n, alpha, OMEGA, c_default(), 2e-3).ln();
        let solver = solver_log_gap(n, alpha);
        println!("n={n:e} alpha={alpha} fd={fd:.6} solver={solver:.6}");
        assert!((fd - solver).abs() < 1e-4, "n={n:e} alpha={alpha}: fd {fd} vs {solver}");
    }
}

#[test]
fn harmonic_limit_zero_width() {
    let model = ContinuousModel::new(1e6, 0.3).unwrap().with_half_width(0.0).unwrap();
    let record = continuous_gap_for(&model, &GapSolver::default()).unwrap();
    assert!((record.gap() - (3f64.sqrt() - 1.0)).abs() < 1e-10, "{}", record.gap());
}
