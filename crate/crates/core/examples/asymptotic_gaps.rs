//! Closed-form large-n gaps, the second-order correction and the size at
//! which that correction predicts a given exact/leading ratio.

use tunnelgap::asymptotic::{
    gap_first_order, gap_second_order, kappa, n_threshold_estimate, ratio_target,
};
use tunnelgap::continuous::{default_c, DEFAULT_OMEGA};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let prec = PrecisionPolicy::new(30)?;
    let (omega, c) = (DEFAULT_OMEGA, default_c());
    println!("kappa(4/3) = {:.6}", kappa(omega, &prec)?);

    for n in [1e4, 1e8, 1e12] {
        let g1 = gap_first_order(n, 0.3, omega, c)?;
        let g2 = gap_second_order(n, 0.3, omega, c, &prec)?;
        println!("alpha 0.3  n {n:.0e}: first {:.8}  second {:.8}", g1.gap(), g2.gap());
    }
    let g = gap_first_order(1e12, 0.45, omega, c)?;
    println!("alpha 0.45 n 1e12: ln g = {:.6} (R -> {})", g.ln_gap(), ratio_target(0.45)?);

    for v in [0.5, 0.8, 0.9] {
        println!("n(v = {v}) at alpha 0.3: {:.3e}", n_threshold_estimate(v, 0.3, omega, &prec)?);
    }
    Ok(())
}
