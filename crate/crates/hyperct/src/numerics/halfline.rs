//! Adaptive integration of exponentially decaying functions on (0, ∞).

use super::gauss::gk15_panel;
use super::{IntegralResult, NumericsError, QuadratureSpec};
use crate::Complex;
use std::collections::BinaryHeap;

/// Leading even Taylor coefficients of the integrand near y = 0, used to
/// integrate (0, cutoff] exactly when direct evaluation would cancel
/// catastrophically. Represents c0 + c1 y² + c2 y⁴ + c3 y⁶.
#[derive(Clone, Copy, Debug)]
pub struct SmallYExpansion {
    pub coeffs: [Complex; 4],
    pub cutoff: f64,
}

impl SmallYExpansion {
    /// Exact integral of the polynomial over (0, cutoff].
    fn integral(&self) -> Complex {
        let y = self.cutoff;
        let y2 = y * y;
        let mut acc = Complex::new(0.0, 0.0);
        let mut pow = y;
        for (m, c) in self.coeffs.iter().enumerate() {
            acc += c * pow / (2 * m + 1) as f64;
            pow *= y2;
        }
        acc
    }
}

#[derive(Debug)]
struct Panel {
    error: f64,
    id: usize,
    a: f64,
    b: f64,
    value: Complex,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.id == other.id
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error; ties broken by smaller id for determinism
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Integrate `f` over (0, ∞) for `f` with `|f(y)| <= C exp(-decay_rate y)`
/// at large `y`. The truncation point is chosen from `decay_rate` and a
/// sampled magnitude estimate so that the tail bound falls below
/// `abs_tol / 10`. An optional small-y expansion covers (0, cutoff] exactly.
pub fn integrate_halfline<F: Fn(f64) -> Complex>(
    f: F,
    small_y: Option<SmallYExpansion>,
    spec: &QuadratureSpec,
    decay_rate: f64,
) -> Result<IntegralResult, NumericsError> {
    if !(decay_rate > 0.0) {
        return Err(NumericsError::InvalidDecay(decay_rate));
    }
    if !spec.is_valid() {
        return Err(NumericsError::InvalidSpec(format!("{spec:?}")));
    }

    let mut evaluations = 0usize;

    // Estimate the decay constant C from a few probes, then truncate where
    // the tail integral C exp(-r Y)/r is below abs_tol/10.
    let mut c_est: f64 = 0.0;
    for y in [0.5, 1.0, 2.0, 4.0] {
        let m = f(y).norm() * (decay_rate * y).exp();
        evaluations += 1;
        if m.is_finite() {
            c_est = c_est.max(m);
        }
    }
    c_est = c_est.max(1e-300);
    let mut y_max =
        ((10.0 * c_est / (decay_rate * spec.abs_tol)).ln() / decay_rate).max(6.0 / decay_rate.min(1.0));
    y_max = (y_max * spec.truncation_safety).max(6.0);
    if y_max > 1e5 {
        // decaying too slowly to truncate at sane cost
        return Err(NumericsError::NonConvergence {
            value_abs: 0.0,
            error_estimate: f64::INFINITY,
            evaluations,
        });
    }

    let start = small_y.as_ref().map(|s| s.cutoff).unwrap_or(0.0);
    let head = small_y.as_ref().map(|s| s.integral()).unwrap_or_default();

    // Initial panels on a geometric-ish partition so oscillation at moderate
    // y is resolved before adaptivity takes over.
    let mut cuts = vec![start];
    let mut y = 1.0f64.min(y_max / 2.0).max(start * 2.0);
    while y < y_max {
        cuts.push(y);
        y *= 2.0;
    }
    cuts.push(y_max);

    let mut heap = BinaryHeap::new();
    let mut total = head;
    let mut total_err = 0.0;
    let mut next_id = 0usize;
    for w in cuts.windows(2) {
        let (v, e) = gk15_panel(&f, w[0], w[1]);
        evaluations += 15;
        total += v;
        total_err += e;
        heap.push(Panel {
            error: e,
            id: next_id,
            a: w[0],
            b: w[1],
            value: v,
        });
        next_id += 1;
    }

    while total_err > spec.target(total.norm()) {
        if next_id >= spec.max_subdivisions {
            return Err(NumericsError::NonConvergence {
                value_abs: total.norm(),
                error_estimate: total_err,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15_panel(&f, worst.a, mid);
        let (v2, e2) = gk15_panel(&f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel {
            error: e1,
            id: next_id,
            a: worst.a,
            b: mid,
            value: v1,
        });
        next_id += 1;
        heap.push(Panel {
            error: e2,
            id: next_id,
            a: mid,
            b: worst.b,
            value: v2,
        });
        next_id += 1;
    }

    // Re-sum leaves in interval order for run-to-run identical output.
    let mut leaves: Vec<Panel> = heap.into_vec();
    leaves.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = head;
    let mut error_estimate = 0.0;
    for p in &leaves {
        value += p.value;
        error_estimate += p.error;
    }
    // tail bound below abs_tol/10 by construction
    error_estimate += spec.abs_tol / 10.0;

    Ok(IntegralResult {
        value,
        error_estimate,
        evaluations,
        converged: error_estimate <= spec.target(value.norm()),
    })
}
