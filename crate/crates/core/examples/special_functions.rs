//! Parabolic cylinder functions, Kummer's M and the digamma function at
//! 50 significant digits.

use tunnelgap::specfun::{digamma, kummer_m, pcf_d_with_prime};
use tunnelgap::PrecisionPolicy;

fn main() -> tunnelgap::Result<()> {
    let prec = PrecisionPolicy::new(50)?;
    let f = |x: f64| prec.float(x);

    // D_2(z) = (z^2 - 1) exp(-z^2/4)
    let (d, dp) = pcf_d_with_prime(&f(2.0), &f(1.5), &prec)?;
    println!("D_2(1.5)   = {}", d.to_string_radix(10, Some(30)));
    println!("D_2'(1.5)  = {}", dp.to_string_radix(10, Some(30)));
    let (d, _) = pcf_d_with_prime(&f(-0.5), &f(1.0), &prec)?;
    println!("D_-1/2(1)  = {}", d.to_string_radix(10, Some(30)));

    // M(1, 2, z) = (e^z - 1) / z
    let m = kummer_m(&f(1.0), &f(2.0), &f(3.0), &prec)?;
    println!("M(1,2,3)   = {}", m.to_string_radix(10, Some(30)));

    // psi(-1/2) = 2 - gamma - 2 ln 2
    let psi = digamma(&f(-0.5), &prec)?;
    println!("psi(-1/2)  = {}", psi.to_string_radix(10, Some(30)));
    Ok(())
}
