//! Reusable numerical kernels.
//!
//! All kernels are pure functions of their inputs and safe for concurrent
//! invocation. The adaptive cubature evaluates the nodes of a cell in
//! parallel but accumulates in a fixed order, so results are run-to-run
//! identical.

mod cubature;
mod gauss;
mod halfline;
mod lattice;
mod trapezoid;

pub use cubature::{integrate_box_nd, monte_carlo_box};
pub use halfline::{integrate_halfline, SmallYExpansion};
pub use lattice::{lattice_sum, LatticeSum};
pub use trapezoid::trapezoid_periodic_nd;

use crate::Complex;
use thiserror::Error;

/// Tolerances and budgets shared by the quadrature kernels.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance, in (0, 1).
    pub rel_tol: f64,
    /// Absolute tolerance, in (0, 1).
    pub abs_tol: f64,
    /// Budget on interval/cell subdivisions.
    pub max_subdivisions: usize,
    /// Multiplier (>= 1) applied to computed truncation radii.
    pub truncation_safety: f64,
    /// Sample count for the Monte-Carlo fallback.
    pub mc_samples: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 100_000,
            truncation_safety: 1.0,
            mc_samples: 100_000,
        }
    }
}

impl QuadratureSpec {
    /// `true` when the tolerance fields are in range.
    pub fn is_valid(&self) -> bool {
        self.rel_tol > 0.0
            && self.rel_tol < 1.0
            && self.abs_tol > 0.0
            && self.abs_tol < 1.0
            && self.max_subdivisions > 0
            && self.truncation_safety >= 1.0
            && self.mc_samples > 0
    }

    /// Convergence target for an estimate of magnitude `|value|`.
    #[inline]
    pub fn target(&self, value_abs: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value_abs)
    }
}

/// Outcome of a quadrature kernel.
#[derive(Clone, Copy, Debug)]
pub struct IntegralResult {
    pub value: Complex,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Errors reported by the numerical kernels.
#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("subdivision budget exhausted (error estimate {error_estimate:.3e} for value of magnitude {value_abs:.3e} after {evaluations} evaluations)")]
    NonConvergence {
        value_abs: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    #[error("decay rate must be positive, got {0}")]
    InvalidDecay(f64),
    #[error("deterministic cubature supports dimensions 1..=3, got {0}; use monte_carlo_box")]
    DimensionTooLarge(usize),
    #[error("invalid integration box: {0}")]
    InvalidBox(String),
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("lattice generators invalid: {0}")]
    InvalidGenerators(String),
}
