//! Problem sizes at which the integer barrier width steps up, for both
//! barrier shapes.

use tunnelgap::discrete::{width_transitions, BarrierSpec};

fn main() -> tunnelgap::Result<()> {
    for spec in [BarrierSpec::square(0.3)?, BarrierSpec::binomial(0.3)?] {
        let ns = width_transitions(&spec, 10, 2000);
        let widths: Vec<u64> = ns.iter().map(|&n| spec.width(n).floor() as u64).collect();
        println!("{}: {} transitions", spec.shape(), ns.len());
        for (n, w) in ns.iter().zip(&widths).take(12) {
            println!("  n = {n:>5}  width = {w}");
        }
    }
    Ok(())
}
