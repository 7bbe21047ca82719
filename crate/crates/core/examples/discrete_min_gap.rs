//! Exact minimum gap of the n-qubit problem, restricted to the symmetric
//! subspace, for square and binomial barriers.

use tunnelgap::discrete::{scan_min_gap, BarrierSpec, DEFAULT_REL_TOL, DEFAULT_S_GRID};

fn main() -> tunnelgap::Result<()> {
    let alpha = 0.3;
    println!("{:>6} {:>10} {:>14} {:>10}", "n", "barrier", "g_min", "s*");
    for n in [16u64, 64, 256, 1024] {
        for spec in [BarrierSpec::square(alpha)?, BarrierSpec::binomial(alpha)?] {
            let scan = scan_min_gap(n, Some(&spec), DEFAULT_S_GRID, DEFAULT_REL_TOL)?;
            println!(
                "{n:>6} {:>10} {:>14.10} {:>10.6}",
                spec.shape().to_string(),
                scan.record.gap(),
                scan.record.s_star().unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
