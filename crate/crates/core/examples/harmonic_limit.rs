//! Zero-width barrier: the two lowest levels of the harmonic well sit at
//! cE = omega and 3 omega, so the gap is 2 omega / c = sqrt(3) - 1.

use tunnelgap::continuous::{continuous_gap_for, ContinuousModel, GapSolver};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let model = ContinuousModel::new(1e4, 0.3)?.with_half_width(0.0)?;
    let record = continuous_gap_for(&model, &GapSolver::new(PrecisionPolicy::new(30)?))?;
    println!("gap          = {:.15}", record.gap());
    println!("sqrt(3) - 1  = {:.15}", 3f64.sqrt() - 1.0);
    println!("digits used  = {:?}", record.digits_used());
    Ok(())
}
