//! Gap of the continuous double well from the even/odd matching condition,
//! with adaptive precision, next to the leading-order asymptotic value.

use tunnelgap::asymptotic::log_gap_first_order;
use tunnelgap::continuous::{continuous_gap, default_c, DEFAULT_OMEGA};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let prec = PrecisionPolicy::new(30)?;
    let (omega, c) = (DEFAULT_OMEGA, default_c());
    println!("{:>6} {:>8} {:>18} {:>12} {:>7}", "alpha", "n", "ln g_min", "g / g_asym", "digits");
    for alpha in [0.3, 0.45] {
        for n in [1e3, 1e6, 1e9, 1e12] {
            let r = continuous_gap(n, alpha, omega, c, &prec)?;
            let ratio = (r.ln_gap() - log_gap_first_order(n, alpha, omega, c)?).exp();
            println!(
                "{alpha:>6} {n:>8.0e} {:>18.10} {ratio:>12.6} {:>7}",
                r.ln_gap(),
                r.digits_used().unwrap_or(0)
            );
        }
    }
    Ok(())
}
