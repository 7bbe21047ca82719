//! Two lowest eigenvalues of a symmetric tridiagonal matrix by Sturm
//! bisection.

use tunnelgap::discrete::{lowest_two_eigenvalues, TridiagonalMatrix};

fn main() -> tunnelgap::Result<()> {
    // Free particle on 100 sites: eigenvalues 4 sin^2(k pi / 202).
    let n = 100;
    let m = TridiagonalMatrix::new(vec![2.0; n], vec![-1.0; n - 1])?;
    let (l0, l1) = lowest_two_eigenvalues(&m, 1e-15)?;
    let exact = |k: f64| 4.0 * (k * std::f64::consts::PI / (2.0 * (n as f64 + 1.0))).sin().powi(2);
    println!("lambda0 = {l0:.16e} (exact {:.16e})", exact(1.0));
    println!("lambda1 = {l1:.16e} (exact {:.16e})", exact(2.0));
    println!("Gershgorin interval {:?}", m.gershgorin());
    Ok(())
}
