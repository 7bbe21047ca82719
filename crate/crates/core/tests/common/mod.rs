//! Reference computations shared by the integration and acceptance tests.
//! None of them call into the solver they check.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Lowest two eigenvalues of a symmetric tridiagonal matrix by dense
/// diagonalization.
pub fn dense_lowest_two(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            offdiag[i]
        } else if j + 1 == i {
            offdiag[j]
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    (ev[0], ev[1])
}

/// Random symmetric tridiagonal matrix of dimension `2..=max_dim` with
/// entries in `[-10, 10]`; every tenth matrix has a zero off-diagonal entry
/// and repeated diagonal values to exercise degenerate cases.
pub fn random_tridiagonal(rng: &mut ChaCha8Rng, index: usize, max_dim: usize) -> (Vec<f64>, Vec<f64>) {
    let dim = rng.gen_range(2..=max_dim);
    let mut diag: Vec<f64> = (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect();
    let mut off: Vec<f64> = (0..dim - 1).map(|_| rng.gen_range(-10.0..10.0)).collect();
    if index % 10 == 9 && dim > 2 {
        let k = rng.gen_range(0..dim - 1);
        off[k] = 0.0;
        let d = diag[0];
        diag.iter_mut().step_by(2).for_each(|x| *x = d);
    }
    (diag, off)
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Symmetric-sector gap of the full `2^n` Hamiltonian
/// `-(1 - s) sum_i X_i + s diag(cost(|x|))`.
///
/// The Hamiltonian is applied to each normalized Dicke vector bit by bit
/// and projected back onto the Dicke basis; the projected matrix is
/// diagonalized densely.
pub fn full_space_sector_gap(n: u32, s: f64, cost: impl Fn(u32) -> f64) -> f64 {
    let dim = 1usize << n;
    let weights: Vec<u32> = (0..dim).map(|x| (x as u32).count_ones()).collect();
    let norm: Vec<f64> = (0..=n as u64).map(|w| binomial_f64(n as u64, w).sqrt().recip()).collect();
    let dicke = |w: u32| -> Vec<f64> {
        weights
            .iter()
            .map(|&x| if x == w { norm[w as usize] } else { 0.0 })
            .collect()
    };
    let apply = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for x in 0..dim {
            if v[x] == 0.0 {
                continue;
            }
            out[x] += s * cost(weights[x]) * v[x];
            for bit in 0..n {
                out[x ^ (1 << bit)] -= (1.0 - s) * v[x];
            }
        }
        out
    };
    let basis: Vec<Vec<f64>> = (0..=n).map(dicke).collect();
    let images: Vec<Vec<f64>> = basis.iter().map(|v| apply(v)).collect();
    let k = n as usize + 1;
    let projected = DMatrix::from_fn(k, k, |i, j| {
        basis[i].iter().zip(&images[j]).map(|(a, b)| a * b).sum::<f64>()
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(projected).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev[1] - ev[0]
}

/// Square barrier cost `w + n^alpha` on `|w - n/4| <= n^alpha / 2`.
pub fn square_barrier_cost(n: u32, alpha: f64) -> impl Fn(u32) -> f64 {
    let nf = f64::from(n);
    let height = nf.powf(alpha);
    let half = nf.powf(alpha) / 2.0;
    move |w| {
        let inside = (f64::from(w) - nf / 4.0).abs() <= half;
        f64::from(w) + if inside { height } else { 0.0 }
    }
}

/// Number of eigenvalues below `x` of the tridiagonal matrix with constant
/// off-diagonal `e` (except `first_off` between rows 0 and 1).
fn count_below(diag: &[f64], e: f64, first_off: f64, x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let off = match i {
            0 => 0.0,
            1 => first_off,
            _ => e,
        };
        q = d - x - if i == 0 { 0.0 } else { off * off / q };
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn lowest_eigenvalue(diag: &[f64], e: f64, first_off: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, e, first_off, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Continuous gap from a finite-difference discretization of the well in
/// the harmonic variable `y = x sqrt(2 omega / eps)`:
///
/// `-psi'' + W(y) psi = mu psi`, `W = eps^-alpha / 2` for `y < z0`,
/// `y^2 / 4` beyond, `mu = cE / (2 omega)`.
///
/// Even states use a reflecting end at `y = 0`, odd states a node. The
/// barrier edge sits on a grid node with the averaged potential, so the
/// error is `O(h^2)`; two grids are Richardson-combined.
pub fn finite_difference_gap(n: f64, alpha: f64, omega: f64, c: f64, h_target: f64) -> f64 {
    let eps = 2.0 / n;
    let z0 = (2.0 * omega / eps).sqrt() * eps.powf(1.0 - alpha) / 2.0;
    let top = eps.powf(-alpha) / 2.0;
    let mu_gap = |cells: usize| -> f64 {
        let h = z0 / cells as f64;
        let length = z0 + 16.0;
        let nodes = (length / h).ceil() as usize;
        let w = |i: usize| {
            let y = i as f64 * h;
            if i < cells {
                top
            } else if i == cells {
                0.5 * (top + y * y / 4.0)
            } else {
                y * y / 4.0
            }
        };
        let inv_h2 = 1.0 / (h * h);
        let e = -inv_h2;
        let even_diag: Vec<f64> = (0..nodes).map(|i| 2.0 * inv_h2 + w(i)).collect();
        let odd_diag: Vec<f64> = (1..nodes).map(|i| 2.0 * inv_h2 + w(i)).collect();
        let bound = top.max(16.0) + 8.0;
        let even = lowest_eigenvalue(&even_diag, e, e * 2f64.sqrt(), bound);
        let odd = lowest_eigenvalue(&odd_diag, e, e, bound);
        odd - even
    };
    let cells = ((z0 / h_target).ceil() as usize).max(8);
    let coarse = mu_gap(cells);
    let fine = mu_gap(2 * cells);
    let mu = (4.0 * fine - coarse) / 3.0;
    2.0 * omega / c * mu
}

pub const OMEGA: f64 = 4.0 / 3.0;

pub fn c_default() -> f64 {
    8.0 / (3.0 * (3f64.sqrt() - 1.0))
}

/// Composite Simpson rule on `[a, b]` with `2 m` panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / (2 * m) as f64;
    let mut sum = f(a) + f(b);
    for i in 1..2 * m {
        let x = a + i as f64 * h;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    sum * h / 3.0
}

/// Kummer `M(a, b, z)` by direct summation of `terms` terms.
pub fn kummer_direct(a: f64, b: f64, z: f64, terms: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..terms {
        let k = k as f64;
        term *= (a + k) / (b + k) * z / (k + 1.0);
        sum += term;
    }
    sum
}

/// Physicists' Hermite polynomial `H_m(x)`.
pub fn hermite(m: u32, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if m == 0 {
        return h0;
    }
    for k in 1..m {
        let h2 = 2.0 * x * h1 - 2.0 * f64::from(k) * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}
