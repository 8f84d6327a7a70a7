//! Periodic trapezoid rule on the unit torus.

use crate::Complex;

/// Mean of `f` over the uniform grid (j1/m, ..., jn/m), jk in 0..m.
///
/// For f analytic and 1-periodic in each coordinate this converges
/// geometrically in `m` (it annihilates every nonzero Fourier mode whose
/// order is not a multiple of `m`).
pub fn trapezoid_periodic_nd<F: Fn(&[f64]) -> Complex>(f: F, dim: usize, m: usize) -> Complex {
    assert!(m >= 2, "grid must have at least 2 points per axis");
    assert!(dim >= 1);
    let total = m.pow(dim as u32);
    let mut x = vec![0.0f64; dim];
    let mut sum = Complex::new(0.0, 0.0);
    for idx in 0..total {
        let mut rem = idx;
        for xd in x.iter_mut() {
            *xd = (rem % m) as f64 / m as f64;
            rem /= m;
        }
        sum += f(&x);
    }
    sum / total as f64
}
