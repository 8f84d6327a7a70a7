//! Adaptive tensor-product cubature over boxes, with a seeded Monte-Carlo
//! fallback for dimensions above three.

use super::gauss::{GL10_NODES, GL10_WEIGHTS, GL5_NODES, GL5_WEIGHTS};
use super::{IntegralResult, NumericsError, QuadratureSpec};
use crate::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BinaryHeap;

fn check_box(lower: &[f64], upper: &[f64]) -> Result<(), NumericsError> {
    if lower.is_empty() || lower.len() != upper.len() {
        return Err(NumericsError::InvalidBox(format!(
            "lower/upper lengths {} vs {}",
            lower.len(),
            upper.len()
        )));
    }
    for (a, b) in lower.iter().zip(upper) {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(NumericsError::InvalidBox(format!("[{a}, {b}]")));
        }
    }
    Ok(())
}

/// Tensor Gauss-Legendre of orders 5 and 10 on one cell. Returns
/// (order-10 value, |order-10 - order-5|, evaluations).
fn cell_rule<F>(f: &F, lo: &[f64], hi: &[f64]) -> (Complex, f64, usize)
where
    F: Fn(&[f64]) -> Complex + Sync,
{
    let n = lo.len();
    let mut counts5 = 1usize;
    let mut counts10 = 1usize;
    for _ in 0..n {
        counts5 *= 5;
        counts10 *= 10;
    }

    let point = |idx: usize, order: usize, nodes: &[f64]| -> ([f64; 3], f64) {
        let mut x = [0.0f64; 3];
        let mut w = 1.0f64;
        let mut rem = idx;
        for d in 0..n {
            let j = rem % order;
            rem /= order;
            let half = 0.5 * (hi[d] - lo[d]);
            x[d] = lo[d] + half * (1.0 + nodes[j]);
            w *= half
                * if order == 5 {
                    GL5_WEIGHTS[j]
                } else {
                    GL10_WEIGHTS[j]
                };
        }
        (x, w)
    };

    // Parallel evaluation in node order, serial deterministic reduction.
    let vals10: Vec<Complex> = (0..counts10)
        .into_par_iter()
        .map(|idx| {
            let (x, w) = point(idx, 10, &GL10_NODES);
            w * f(&x[..n])
        })
        .collect();
    let vals5: Vec<Complex> = (0..counts5)
        .into_par_iter()
        .map(|idx| {
            let (x, w) = point(idx, 5, &GL5_NODES);
            w * f(&x[..n])
        })
        .collect();
    let v10: Complex = vals10.iter().sum();
    let v5: Complex = vals5.iter().sum();
    (v10, (v10 - v5).norm(), counts5 + counts10)
}

#[derive(Debug)]
struct Cell {
    error: f64,
    id: usize,
    lo: Vec<f64>,
    hi: Vec<f64>,
    value: Complex,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.id == other.id
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Adaptive cubature of `f` over the box `[lower, upper]`, dimensions 1..=3.
///
/// Each cell carries tensor Gauss-Legendre estimates of orders 5 and 10;
/// the cell with the largest error is split dyadically along its widest
/// axis until the summed error meets the spec or the budget runs out.
pub fn integrate_box_nd<F>(
    f: F,
    lower: &[f64],
    upper: &[f64],
    spec: &QuadratureSpec,
) -> Result<IntegralResult, NumericsError>
where
    F: Fn(&[f64]) -> Complex + Sync,
{
    check_box(lower, upper)?;
    if !spec.is_valid() {
        return Err(NumericsError::InvalidSpec(format!("{spec:?}")));
    }
    let n = lower.len();
    if n > 3 {
        return Err(NumericsError::DimensionTooLarge(n));
    }

    let (v, e, mut evaluations) = cell_rule(&f, lower, upper);
    let mut heap = BinaryHeap::new();
    heap.push(Cell {
        error: e,
        id: 0,
        lo: lower.to_vec(),
        hi: upper.to_vec(),
        value: v,
    });
    let mut next_id = 1usize;
    let mut total = v;
    let mut total_err = e;

    while total_err > spec.target(total.norm()) {
        if next_id >= spec.max_subdivisions {
            return Err(NumericsError::NonConvergence {
                value_abs: total.norm(),
                error_estimate: total_err,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        // split along the widest axis
        let axis = (0..n)
            .max_by(|&i, &j| {
                (worst.hi[i] - worst.lo[i]).total_cmp(&(worst.hi[j] - worst.lo[j]))
            })
            .unwrap();
        let mid = 0.5 * (worst.lo[axis] + worst.hi[axis]);
        let mut hi_left = worst.hi.clone();
        hi_left[axis] = mid;
        let mut lo_right = worst.lo.clone();
        lo_right[axis] = mid;

        let (v1, e1, n1) = cell_rule(&f, &worst.lo, &hi_left);
        let (v2, e2, n2) = cell_rule(&f, &lo_right, &worst.hi);
        evaluations += n1 + n2;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Cell {
            error: e1,
            id: next_id,
            lo: worst.lo,
            hi: hi_left,
            value: v1,
        });
        next_id += 1;
        heap.push(Cell {
            error: e2,
            id: next_id,
            lo: lo_right,
            hi: worst.hi,
            value: v2,
        });
        next_id += 1;
    }

    // Deterministic final accumulation, sorted by cell id.
    let mut leaves = heap.into_vec();
    leaves.sort_by_key(|cell| cell.id);
    let mut value = Complex::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    for cell in &leaves {
        value += cell.value;
        error_estimate += cell.error;
    }

    Ok(IntegralResult {
        value,
        error_estimate,
        evaluations,
        converged: error_estimate <= spec.target(value.norm()),
    })
}

/// Plain Monte-Carlo estimate over a finite box of any dimension.
/// Identical seeds give bit-identical results.
pub fn monte_carlo_box<F>(
    f: F,
    lower: &[f64],
    upper: &[f64],
    spec: &QuadratureSpec,
    seed: u64,
) -> Result<IntegralResult, NumericsError>
where
    F: Fn(&[f64]) -> Complex,
{
    check_box(lower, upper)?;
    let n = lower.len();
    let samples = spec.mc_samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut volume = 1.0f64;
    for d in 0..n {
        volume *= upper[d] - lower[d];
    }

    let mut x = vec![0.0f64; n];
    let mut sum = Complex::new(0.0, 0.0);
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        for d in 0..n {
            let u: f64 = rng.random();
            x[d] = lower[d] + u * (upper[d] - lower[d]);
        }
        let v = f(&x);
        sum += v;
        sum_sq += v.norm_sqr();
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean.norm_sqr()).max(0.0);
    let std_err = volume * (var / samples as f64).sqrt();
    let value = volume * mean;

    Ok(IntegralResult {
        value,
        error_estimate: std_err,
        evaluations: samples,
        converged: std_err <= spec.target(value.norm()),
    })
}
