//! One-dimensional golden-section minimization.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
    /// Width of the final bracket.
    pub converged_width: f64,
}

/// Minimizes `f` on `[lo, hi]` until the bracket is narrower than `x_tol`.
///
/// Returns the best point evaluated, so the result is never worse than any
/// probe made along the way.
pub fn golden_section<F, E>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> Result<Minimum, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut evaluations = 2;
    let (mut best_x, mut best) = if fc <= fd { (c, fc) } else { (d, fd) };

    while (b - a) > x_tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            if fc < best {
                best = fc;
                best_x = c;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            if fd < best {
                best = fd;
                best_x = d;
            }
        }
        evaluations += 1;
        if evaluations > 10_000 {
            break;
        }
    }
    Ok(Minimum {
        x: best_x,
        value: best,
        evaluations,
        converged_width: b - a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn finds_parabola_minimum() {
        let m = golden_section(|x| Ok::<_, Infallible>((x - 0.3).powi(2) + 1.0), 0.0, 1.0, 1e-10)
            .unwrap();
        // f is flat to rounding within sqrt(eps) of the minimum
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-15);
        assert!(m.converged_width <= 1e-10);
    }

    #[test]
    fn v_shaped_minimum() {
        let m = golden_section(|x| Ok::<_, Infallible>((x - 0.123).abs()), -1.0, 2.0, 1e-12)
            .unwrap();
        assert!((m.x - 0.123).abs() < 1e-11);
    }

    #[test]
    fn errors_propagate() {
        let r = golden_section(|_| Err::<f64, _>("boom"), 0.0, 1.0, 1e-3);
        assert_eq!(r.unwrap_err(), "boom");
    }
}
