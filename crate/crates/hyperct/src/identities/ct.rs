//! The constant-term integrand, its sinh form, the q-densities and all
//! closed-form evaluations.

use super::{IdentityError, ParameterPoint};
use crate::hypergamma::{
    dist_to_cone, gamma_scaled, log_2sinh, log_qpoch, qpoch, SINGULARITY_GUARD,
};
use crate::numerics::QuadratureSpec;
use crate::rootsys::{dot, pairing_rc};
use crate::{c, mul_i, Complex};
use std::f64::consts::{PI, TAU};

fn dot_rc(alpha: &[f64], v: &[Complex]) -> Complex {
    alpha.iter().zip(v).map(|(a, z)| a * z).sum()
}

/// The integrand I(v) = Π_{α∈Σ} G_α(⟨α′,v⟩ + iω_α) / G_α(⟨α′,v⟩ + i(k_α + ω_α)),
/// accumulated in log space and exponentiated once.
///
/// The product runs over the full root system; the factor of a negative
/// root is obtained from its positive partner through the reflection
/// equation G(z)G(−z) = 1, which halves the gamma evaluations per point.
/// `v` may be complex; its entries are coordinates in the ambient ε-basis.
pub fn ct_integrand(
    pp: &ParameterPoint,
    v: &[Complex],
    spec: &QuadratureSpec,
) -> Result<Complex, IdentityError> {
    let mut acc = c(0.0, 0.0);
    for alpha in &pp.rs.positive_roots {
        let u = pp.u_of(alpha);
        let k = pp.rs.k_of(alpha, &pp.k);
        let wa = pp.omega_alpha(alpha);
        let aprime: Vec<f64> = alpha.iter().map(|x| u * x).collect();
        let x = dot_rc(&aprime, v);
        // pole locus of the ±α factors: ±<alpha', v> ∈ −i k_α + Λ_α
        for s in [1.0, -1.0] {
            let d = dist_to_cone(
                s * x + mul_i(k),
                mul_i(pp.qp.wplus()),
                mul_i(u * pp.qp.wminus()),
            );
            if d < SINGULARITY_GUARD {
                return Err(IdentityError::NearSingularity { distance: d });
            }
        }
        // +α factor, and the −α factor rewritten by reflection:
        // G(−x+iω_α)/G(−x+i(k+ω_α)) = G(x−i(k+ω_α))/G(x−iω_α)
        acc += gamma_scaled(&pp.qp, u, x + mul_i(wa), spec)?.log_value;
        acc -= gamma_scaled(&pp.qp, u, x + mul_i(k + wa), spec)?.log_value;
        acc += gamma_scaled(&pp.qp, u, x - mul_i(k + wa), spec)?.log_value;
        acc -= gamma_scaled(&pp.qp, u, x - mul_i(wa), spec)?.log_value;
    }
    Ok(acc.exp())
}

/// The sinh form of the integrand,
/// Π_{α∈Σ⁺} 4 sinh(π⟨α′,v⟩/ω₊) sinh(π⟨α,v⟩/ω₋)
///          · G_α(⟨α′,v⟩ − i(k_α+ω_α)) G_α(−⟨α′,v⟩ − i(k_α+ω_α)).
///
/// Must agree with [`ct_integrand`] pointwise; the equality is itself a
/// verified identity (it pins the α-vs-α′ placement in the sinh factors).
pub fn ct_integrand_alt(
    pp: &ParameterPoint,
    v: &[Complex],
    spec: &QuadratureSpec,
) -> Result<Complex, IdentityError> {
    let mut acc = c(0.0, 0.0);
    for alpha in &pp.rs.positive_roots {
        let u = pp.u_of(alpha);
        let k = pp.rs.k_of(alpha, &pp.k);
        let wa = pp.omega_alpha(alpha);
        let aprime: Vec<f64> = alpha.iter().map(|x| u * x).collect();
        let xp = dot_rc(&aprime, v);
        let xa = dot_rc(alpha, v);
        let s1 = log_2sinh(PI * xp / pp.qp.wplus());
        let s2 = log_2sinh(PI * xa / pp.qp.wminus());
        let (s1, s2) = match (s1, s2) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(c(0.0, 0.0)),
        };
        let g1 = gamma_scaled(&pp.qp, u, xp - mul_i(k + wa), spec)?;
        let g2 = gamma_scaled(&pp.qp, u, -xp - mul_i(k + wa), spec)?;
        acc += s1 + s2 + g1.log_value + g2.log_value;
    }
    Ok(acc.exp())
}

/// Δ(v) = Π_{α∈Σ} (e^{2πi⟨α,v⟩}; q_α)_∞ / (t_α e^{2πi⟨α,v⟩}; q_α)_∞ for real v.
pub fn density_delta(
    pp: &ParameterPoint,
    v: &[f64],
    eps: f64,
) -> Result<Complex, IdentityError> {
    pp.validate_s_prime_periods()
        .map_err(IdentityError::NotInSPrime)?;
    let mut out = c(1.0, 0.0);
    for alpha in &pp.rs.roots {
        let qa = pp.q_alpha(alpha);
        let ta = pp.t_alpha(alpha);
        let x = (TAU * mul_i(c(dot(alpha, v), 0.0))).exp();
        let num = qpoch(x, qa, eps)?;
        let den = qpoch(ta * x, qa, eps)?;
        out *= num / den;
    }
    Ok(out)
}

/// Δ̃(v) = Π_{α∈Σ} (t̃_α q̃_α^{1+⟨α,v⟩}; q̃_α)_∞ / (q̃_α^{1+⟨α,v⟩}; q̃_α)_∞.
///
/// Requires ⟨α,v⟩ ∉ ℤ for every root; powers of q̃_α are evaluated through
/// the exponential, never as powers of a stored base.
pub fn density_delta_tilde(
    pp: &ParameterPoint,
    v: &[f64],
    eps: f64,
) -> Result<Complex, IdentityError> {
    pp.validate_s_prime_periods()
        .map_err(IdentityError::NotInSPrime)?;
    for alpha in &pp.rs.roots {
        let pair = dot(alpha, v);
        if (pair - pair.round()).abs() < 1e-9 {
            return Err(IdentityError::IntegralityViolation { value: pair });
        }
    }
    let mut acc = c(0.0, 0.0);
    for alpha in &pp.rs.roots {
        let qta = pp.qtilde_alpha(alpha);
        let tta = pp.ttilde_alpha(alpha);
        let base = pp.qtilde_alpha_pow(alpha, c(1.0 + dot(alpha, v), 0.0));
        let (num, num_zero) = log_qpoch(tta * base, qta, eps)?;
        let (den, den_zero) = log_qpoch(base, qta, eps)?;
        if den_zero {
            return Err(IdentityError::IntegralityViolation {
                value: dot(alpha, v),
            });
        }
        if num_zero {
            return Ok(c(0.0, 0.0));
        }
        acc += num - den;
    }
    Ok(acc.exp())
}

/// K = Π_{α∈Σ⁺} exp(−πi k_α (k_α + 2ω_α) / (u_α ω₊ ω₋)).
pub fn constant_k(pp: &ParameterPoint) -> Complex {
    let mut acc = c(0.0, 0.0);
    let ww = pp.qp.wplus() * pp.qp.wminus();
    for alpha in &pp.rs.positive_roots {
        let u = pp.u_of(alpha);
        let k = pp.rs.k_of(alpha, &pp.k);
        let wa = pp.omega_alpha(alpha);
        acc += -PI * mul_i(k * (k + 2.0 * wa) / (u * ww));
    }
    acc.exp()
}

/// Chamber form of the evaluated identity (the ∫_{V⁺} normalization):
///
/// f ω₋ⁿ Π_{α∈Σ⁺} G_α(i(⟨ρ_k,α∨⟩+ω_α)) G_α(i(⟨ρ_k,α∨⟩−ω_α)) /
///   [G_α(i(⟨ρ_k,α∨⟩+k_α+ω_α)) G_α(i(⟨ρ_k,α∨⟩−k_α+u_αω₋δ_α−ω_α))].
pub fn rhs_chamber(pp: &ParameterPoint, spec: &QuadratureSpec) -> Result<Complex, IdentityError> {
    let rho = pp.rs.rho_k(&pp.k);
    let mut acc = c(0.0, 0.0);
    for (idx, alpha) in pp.rs.positive_roots.iter().enumerate() {
        let u = pp.u_of(alpha);
        let k = pp.rs.k_of(alpha, &pp.k);
        let wa = pp.omega_alpha(alpha);
        let cr = crate::rootsys::coroot(alpha)?;
        let rka = pairing_rc(&cr, &rho);
        let delta = if pp.rs.is_simple(idx) { 1.0 } else { 0.0 };
        acc += gamma_scaled(&pp.qp, u, mul_i(rka + wa), spec)?.log_value;
        acc += gamma_scaled(&pp.qp, u, mul_i(rka - wa), spec)?.log_value;
        acc -= gamma_scaled(&pp.qp, u, mul_i(rka + k + wa), spec)?.log_value;
        acc -= gamma_scaled(&pp.qp, u, mul_i(rka - k + delta * u * pp.qp.wminus() - wa), spec)?
            .log_value;
    }
    let n = pp.rs.rank as i32;
    Ok(pp.rs.index_f as f64 * pp.qp.wminus().powi(n) * acc.exp())
}

/// Weyl form of the evaluated identity (the ∫_V normalization):
/// f·#W·Π_j √(ω₊ω₋/u_{α_j}) times the regularized product, which omits the
/// denominator factors G_{α_j}(i(⟨ρ_k,α_j∨⟩ − k_{α_j} − ω_{α_j})).
pub fn rhs_weyl(pp: &ParameterPoint, spec: &QuadratureSpec) -> Result<Complex, IdentityError> {
    let rho = pp.rs.rho_k(&pp.k);
    let ww = pp.qp.wplus() * pp.qp.wminus();
    let mut acc = c(0.0, 0.0);
    let mut pref = c(pp.rs.index_f as f64 * pp.rs.weyl_order as f64, 0.0);
    for (idx, alpha) in pp.rs.positive_roots.iter().enumerate() {
        let u = pp.u_of(alpha);
        let k = pp.rs.k_of(alpha, &pp.k);
        let wa = pp.omega_alpha(alpha);
        let cr = crate::rootsys::coroot(alpha)?;
        let rka = pairing_rc(&cr, &rho);
        acc += gamma_scaled(&pp.qp, u, mul_i(rka + wa), spec)?.log_value;
        acc += gamma_scaled(&pp.qp, u, mul_i(rka - wa), spec)?.log_value;
        acc -= gamma_scaled(&pp.qp, u, mul_i(rka + k + wa), spec)?.log_value;
        if !pp.rs.is_simple(idx) {
            acc -= gamma_scaled(&pp.qp, u, mul_i(rka - k - wa), spec)?.log_value;
        } else {
            pref *= (ww / u).sqrt();
        }
    }
    Ok(pref * acc.exp())
}

/// The q-constant-term evaluation N (carries the #W factor as stated):
///
/// N = #W Π_{α∈Σ⁺} (E_α; q_α)(q_α E_α; q_α) / [(t_α E_α; q_α)(q_α t_α⁻¹ E_α; q_α)]
/// with E_α = exp(−2πi⟨ρ_k,α∨⟩/(u_α ω₋)).
pub fn macdonald_n(pp: &ParameterPoint, eps: f64) -> Result<Complex, IdentityError> {
    pp.validate_s_prime_periods()
        .map_err(IdentityError::NotInSPrime)?;
    let mut acc = c(0.0, 0.0);
    for alpha in &pp.rs.positive_roots {
        let u = pp.u_of(alpha);
        let qa = pp.q_alpha(alpha);
        let ta = pp.t_alpha(alpha);
        let rka = pp.rho_pairing(alpha);
        let e = (-TAU * mul_i(rka / (u * pp.qp.wminus()))).exp();
        for (arg, sign) in [
            (e, 1.0),
            (qa * e, 1.0),
            (ta * e, -1.0),
            (qa * e / ta, -1.0),
        ] {
            let (l, zero) = log_qpoch(arg, qa, eps)?;
            if zero {
                return Err(IdentityError::NearSingularity { distance: 0.0 });
            }
            acc += sign * l;
        }
    }
    Ok(pp.rs.weyl_order as f64 * acc.exp())
}

/// The dual summation evaluation Ñ (carries the index f):
///
/// Ñ = f Π_{α∈Σ⁺} (q̃_α t̃_α Ẽ_α; q̃_α)(q̃_α^{δ_α} t̃_α⁻¹ Ẽ_α; q̃_α) /
///     [(q̃_α Ẽ_α; q̃_α)(Ẽ_α; q̃_α)]
/// with Ẽ_α = exp(−2πi⟨ρ_k,α∨⟩/ω₊).
pub fn macdonald_n_tilde(pp: &ParameterPoint, eps: f64) -> Result<Complex, IdentityError> {
    pp.validate_s_prime_periods()
        .map_err(IdentityError::NotInSPrime)?;
    let mut acc = c(0.0, 0.0);
    for (idx, alpha) in pp.rs.positive_roots.iter().enumerate() {
        let qta = pp.qtilde_alpha(alpha);
        let tta = pp.ttilde_alpha(alpha);
        let rka = pp.rho_pairing(alpha);
        let e = (-TAU * mul_i(rka / pp.qp.wplus())).exp();
        let qd = if pp.rs.is_simple(idx) { qta } else { c(1.0, 0.0) };
        for (arg, sign) in [
            (qta * tta * e, 1.0),
            (qd * e / tta, 1.0),
            (qta * e, -1.0),
            (e, -1.0),
        ] {
            let (l, zero) = log_qpoch(arg, qta, eps)?;
            if zero {
                return Err(IdentityError::NearSingularity { distance: 0.0 });
            }
            acc += sign * l;
        }
    }
    Ok(pp.rs.index_f as f64 * acc.exp())
}
