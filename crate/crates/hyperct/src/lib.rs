//! Numerical library for the hyperbolic gamma function, root-system
//! combinatorics, and both sides of the generalized Cherednik-Macdonald
//! constant term identities (hyperbolic integrals, q-constant terms and
//! lattice sums), together with a verification harness that checks each
//! identity to a stated tolerance.
//!
//! Module map:
//! - [`numerics`]: reusable kernels — adaptive Gauss-Kronrod on the half
//!   line, adaptive tensor cubature over boxes, periodic trapezoid rule,
//!   truncated lattice summation, seeded Monte-Carlo fallback.
//! - [`hypergamma`]: the hyperbolic gamma function G(ω₊,ω₋;z) via its
//!   integral representation in the strip, extended by the functional
//!   equations; q-Pochhammer symbols; Shintani's product form.
//! - [`rootsys`]: irreducible reduced root systems (A, B, C, D, G₂) with
//!   short roots normalized to squared length two, lattices, pairings and
//!   the case (i)/(ii) decoration.
//! - [`identities`]: parameter-space validators, the constant-term
//!   integrand and its sinh form, the q-densities Δ and Δ̃, the constants
//!   K/N/Ñ, closed-form right-hand sides, and the BC-type integral family.
//! - [`verifier`]: end-to-end checks producing structured reports.

pub mod hypergamma;
pub mod identities;
pub mod numerics;
pub mod rootsys;
pub mod verifier;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Shorthand for `Complex::new`.
#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Shorthand for `i * z` computed without a multiplication.
#[inline]
pub fn mul_i(z: Complex) -> Complex {
    Complex::new(-z.im, z.re)
}
