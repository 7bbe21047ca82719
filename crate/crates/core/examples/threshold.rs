//! Size n at which the continuous gap reaches a fraction v of the
//! leading-order gap, next to the second-order estimate of that size.

use tunnelgap::analysis::{continuous_first_order_ratio, threshold_n_ratio};
use tunnelgap::asymptotic::n_threshold_estimate;
use tunnelgap::continuous::{default_c, tunneling_min_n, DEFAULT_OMEGA};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let prec = PrecisionPolicy::new(30)?;
    let alpha = 0.3;
    let ratio = |n: f64| continuous_first_order_ratio(n, alpha, DEFAULT_OMEGA, default_c(), &prec);
    let n_lo = tunneling_min_n(alpha) * 1.001;
    println!("ratio at the smallest tunneling n ({n_lo:.1}): {:.4}", ratio(n_lo)?);
    for v in [0.6, 0.8, 0.9] {
        let n = threshold_n_ratio(alpha, v, ratio, n_lo, 1e30)?;
        let estimate = n_threshold_estimate(v, alpha, DEFAULT_OMEGA, &prec)?;
        println!("v = {v}: n = {n:.4e}   second-order estimate {estimate:.4e}");
    }
    Ok(())
}
