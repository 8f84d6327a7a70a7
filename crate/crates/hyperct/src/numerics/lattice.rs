//! Truncated summation over a finitely generated lattice.

use super::NumericsError;
use crate::Complex;

/// Result of a shell-truncated lattice sum.
#[derive(Clone, Debug)]
pub struct LatticeSum {
    pub value: Complex,
    /// Final shell radius (max |coefficient| summed).
    pub radius: usize,
    pub evaluations: usize,
}

/// Sum `f` over integer combinations of `generators`, shell by shell.
///
/// Starting from shells of radius <= `radius`, the radius grows until the
/// newest shell contributes less than `tail_tol` in absolute value.
pub fn lattice_sum<F: Fn(&[f64]) -> Complex>(
    f: F,
    generators: &[Vec<f64>],
    radius: usize,
    tail_tol: f64,
) -> Result<LatticeSum, NumericsError> {
    let n = generators.len();
    if n == 0 {
        return Err(NumericsError::InvalidGenerators("empty".into()));
    }
    let dim = generators[0].len();
    if generators.iter().any(|g| g.len() != dim) {
        return Err(NumericsError::InvalidGenerators(
            "mixed ambient dimensions".into(),
        ));
    }
    if gram_det(generators) < 1e-14 {
        return Err(NumericsError::InvalidGenerators(
            "generators are linearly dependent".into(),
        ));
    }

    const MAX_RADIUS: usize = 200;
    let mut value = Complex::new(0.0, 0.0);
    let mut evaluations = 0usize;
    let mut point = vec![0.0f64; dim];
    let mut coeffs = vec![0i64; n];

    let mut shell = 0usize;
    loop {
        let mut shell_sum_abs = 0.0f64;
        let mut shell_sum = Complex::new(0.0, 0.0);
        // enumerate coefficient vectors with max |m_j| == shell
        let side = 2 * shell + 1;
        let total = side.pow(n as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut maxabs = 0i64;
            for cj in coeffs.iter_mut() {
                *cj = (rem % side) as i64 - shell as i64;
                maxabs = maxabs.max(cj.abs());
                rem /= side;
            }
            if maxabs != shell as i64 {
                continue;
            }
            for (d, pd) in point.iter_mut().enumerate() {
                *pd = generators
                    .iter()
                    .zip(&coeffs)
                    .map(|(g, &m)| m as f64 * g[d])
                    .sum();
            }
            let v = f(&point);
            evaluations += 1;
            shell_sum += v;
            shell_sum_abs += v.norm();
        }
        value += shell_sum;
        if shell >= radius && shell_sum_abs < tail_tol {
            return Ok(LatticeSum {
                value,
                radius: shell,
                evaluations,
            });
        }
        shell += 1;
        if shell > MAX_RADIUS {
            return Err(NumericsError::NonConvergence {
                value_abs: value.norm(),
                error_estimate: shell_sum_abs,
                evaluations,
            });
        }
    }
}

fn gram_det(generators: &[Vec<f64>]) -> f64 {
    let n = generators.len();
    let mut g = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = generators[i]
                .iter()
                .zip(&generators[j])
                .map(|(a, b)| a * b)
                .sum();
        }
    }
    // Gaussian elimination determinant on the Gram matrix
    let mut det = 1.0f64;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| g[a][col].abs().total_cmp(&g[b][col].abs()))
            .unwrap();
        if g[piv][col].abs() < 1e-300 {
            return 0.0;
        }
        if piv != col {
            g.swap(piv, col);
            det = -det;
        }
        det *= g[col][col];
        for row in col + 1..n {
            let r = g[row][col] / g[col][col];
            for k in col..n {
                g[row][k] -= r * g[col][k];
            }
        }
    }
    det.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn product_of_geometric_sums() {
        // f = 0.5^{|m1|+|m2|} over Z^2 sums to (1 + 2*0.5/(1-0.5))^2 = 9
        let f = |x: &[f64]| c(0.5f64.powf(x[0].abs() + x[1].abs()), 0.0);
        let r = lattice_sum(f, &[vec![1.0, 0.0], vec![0.0, 1.0]], 1, 1e-12).unwrap();
        assert!((r.value - c(9.0, 0.0)).norm() < 1e-9, "{:?}", r.value);
    }

    #[test]
    fn indicator_of_origin() {
        let f = |x: &[f64]| {
            if x.iter().all(|v| v.abs() < 1e-12) {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        };
        let r = lattice_sum(f, &[vec![1.0]], 0, 1e-15).unwrap();
        assert_eq!(r.value, c(1.0, 0.0));
    }

    #[test]
    fn theta_value_matches_brute_force() {
        let q: f64 = 0.3;
        let f = |x: &[f64]| c(q.powf(x[0] * x[0]), 0.0);
        let r = lattice_sum(f, &[vec![1.0]], 1, 1e-14).unwrap();
        let oracle: f64 = (-50i64..=50).map(|m| q.powf((m * m) as f64)).sum();
        assert!((r.value.re - oracle).abs() < 1e-12);
    }

    #[test]
    fn generator_permutation_invariance() {
        let f = |x: &[f64]| c((-(x[0] * x[0]) - 2.0 * x[1] * x[1]).exp(), 0.0);
        let g1 = [vec![1.0, 0.3], vec![0.1, 0.9]];
        let g2 = [vec![0.1, 0.9], vec![1.0, 0.3]];
        let a = lattice_sum(&f, &g1, 2, 1e-13).unwrap();
        let b = lattice_sum(&f, &g2, 2, 1e-13).unwrap();
        assert!((a.value - b.value).norm() < 1e-12);
    }

    #[test]
    fn rejects_dependent_generators() {
        let f = |_: &[f64]| c(0.0, 0.0);
        let r = lattice_sum(f, &[vec![1.0, 0.0], vec![2.0, 0.0]], 1, 1e-12);
        assert!(matches!(r, Err(NumericsError::InvalidGenerators(_))));
    }
}
