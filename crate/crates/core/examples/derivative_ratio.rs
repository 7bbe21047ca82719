//! R = f''/f' with f = ln g_min and x = ln n. A power law gives 0; a
//! stretched exponential exp(-C n^q) gives q.

use tunnelgap::analysis::{derivative_ratio, log_grid, ScalingSeries};
use tunnelgap::asymptotic::{gap_first_order, ratio_target};
use tunnelgap::continuous::{continuous_gap, default_c, DEFAULT_OMEGA};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let (alpha, omega, c) = (0.45, DEFAULT_OMEGA, default_c());
    let prec = PrecisionPolicy::new(30)?;
    let grid = log_grid(1e2, 1e8, 4)?;

    let asym = grid
        .iter()
        .map(|&n| gap_first_order(n, alpha, omega, c))
        .collect::<tunnelgap::Result<Vec<_>>>()?;
    let cont = grid
        .iter()
        .map(|&n| continuous_gap(n, alpha, omega, c, &prec))
        .collect::<tunnelgap::Result<Vec<_>>>()?;
    let r_asym = derivative_ratio(&ScalingSeries::from_records(&asym)?)?;
    let r_cont = derivative_ratio(&ScalingSeries::from_records(&cont)?)?;

    println!("alpha {alpha}, large-n limit R = {}", ratio_target(alpha)?);
    println!("{:>10} {:>12} {:>12}", "n", "R asym", "R cont");
    for (a, c) in r_asym.points.iter().zip(&r_cont.points) {
        println!("{:>10.3e} {:>12.6} {:>12.6}", a.n, a.r, c.r);
    }
    Ok(())
}
