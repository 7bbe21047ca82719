//! Decade-binned power-law fits of the continuous gap. The fitted exponent
//! in each bin is compared with the asymptotic 2 alpha - 1/2.

use tunnelgap::analysis::{binned_power_fits, decade_bins, log_grid, FitModel, ScalingSeries};
use tunnelgap::continuous::{continuous_gap, default_c, DEFAULT_OMEGA};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let prec = PrecisionPolicy::new(30)?;
    for alpha in [0.28, 0.3, 0.32] {
        let records = log_grid(1e3, 1e6, 4)?
            .into_iter()
            .map(|n| continuous_gap(n, alpha, DEFAULT_OMEGA, default_c(), &prec))
            .collect::<tunnelgap::Result<Vec<_>>>()?;
        let series = ScalingSeries::from_records(&records)?;
        let fits = binned_power_fits(&series, &decade_bins(&series))?;
        print!("alpha {alpha}: asymptotic p = {:.3}; fitted", 2.0 * alpha - 0.5);
        for fit in fits {
            if let FitModel::Power { p, .. } = fit.model {
                print!("  [{:.0e}, {:.0e}] p = {p:.4}", fit.n_range.0, fit.n_range.1);
            }
        }
        println!();
    }
    Ok(())
}
