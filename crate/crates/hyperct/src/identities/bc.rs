//! The BC-type hyperbolic integral family J_BC, its closed form N_BC, and
//! the parameter maps taking constant-term data of types A₁/B_n/C_n into it.

use super::{BcParameters, IdentityError, ParameterPoint};
use crate::hypergamma::{gamma, log_2cosh, log_2sinh, QuasiPeriods};
use crate::numerics::QuadratureSpec;
use crate::rootsys::{dot, Family, IdentityCase};
use crate::{c, mul_i, Complex};

/// The J_BC integrand at a real point v ∈ ℝⁿ:
///
/// Π_{α∈R_s} G(⟨α,v⟩+iω) G(⟨α,v⟩+iω₊/2) G(⟨α,v⟩+iω₋/2) / Π_j G(⟨α,v⟩+i(ω+γ_j))
/// · Π_{β∈R_l} G(⟨β,v⟩+iω) / G(⟨β,v⟩+i(ω+κ)).
pub fn bc_integrand(
    bp: &BcParameters,
    v: &[f64],
    spec: &QuadratureSpec,
) -> Result<Complex, IdentityError> {
    let qp = &bp.qp;
    let w = qp.omega();
    let pi = std::f64::consts::PI;
    let mut acc = c(0.0, 0.0);
    // R_s and R_l consist of ± pairs. Combining each pair through the
    // reflection equation turns the self-mirrored numerator shifts into
    // G(x+iω)G(−x+iω) = 4 sinh(πx/ω₊) sinh(πx/ω₋) and
    // G(x+iω±/2)/G(x−iω±/2) = 2 cosh(πx/ω∓), which stay finite on the
    // symmetry hyperplanes x = 0 where the raw factors hit the G zero/pole
    // locus (the integrand itself just vanishes there).
    for alpha in bp.r_short().into_iter().step_by(2) {
        let x = c(dot(&alpha, v), 0.0);
        let (s1, s2) = match (
            log_2sinh(pi * x / qp.wplus()),
            log_2sinh(pi * x / qp.wminus()),
        ) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(c(0.0, 0.0)),
        };
        acc += s1 + s2;
        acc += log_2cosh(pi * x / qp.wminus()) + log_2cosh(pi * x / qp.wplus());
        for g in bp.gamma {
            acc -= gamma(qp, x + mul_i(w + g), spec)?.log_value;
            acc += gamma(qp, x - mul_i(w + g), spec)?.log_value;
        }
    }
    for beta in bp.r_long().into_iter().step_by(2) {
        let x = c(dot(&beta, v), 0.0);
        let (s1, s2) = match (
            log_2sinh(pi * x / qp.wplus()),
            log_2sinh(pi * x / qp.wminus()),
        ) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(c(0.0, 0.0)),
        };
        acc += s1 + s2;
        acc -= gamma(qp, x + mul_i(w + bp.kappa), spec)?.log_value;
        acc += gamma(qp, x - mul_i(w + bp.kappa), spec)?.log_value;
    }
    Ok(acc.exp())
}

/// The closed-form evaluation N_BC:
///
/// 2ⁿ n! (√(ω₊ω₋))ⁿ Π_{j=0}^{n−1} G(i(ω+κ)) G(i(ω+(2n−j−2)κ+|γ|)) /
///   [G(i(ω+(j+1)κ)) Π_{r<s} G(i(ω+jκ+γ_r+γ_s))].
pub fn bc_rhs(bp: &BcParameters, spec: &QuadratureSpec) -> Result<Complex, IdentityError> {
    let qp = &bp.qp;
    let w = qp.omega();
    let n = bp.rank;
    let gsum = bp.gamma_sum();
    let mut acc = c(0.0, 0.0);
    for j in 0..n {
        let jf = j as f64;
        // at j = 0 the factors G(i(ω+κ)) above and below cancel exactly;
        // skipping them keeps the rank-1 case (where κ drops out) regular
        if j != 0 {
            acc += gamma(qp, mul_i(w + bp.kappa), spec)?.log_value;
            acc -= gamma(qp, mul_i(w + (jf + 1.0) * bp.kappa), spec)?.log_value;
        }
        acc += gamma(
            qp,
            mul_i(w + (2.0 * n as f64 - jf - 2.0) * bp.kappa + gsum),
            spec,
        )?
        .log_value;
        for r in 0..4 {
            for s in (r + 1)..4 {
                acc -= gamma(qp, mul_i(w + jf * bp.kappa + bp.gamma[r] + bp.gamma[s]), spec)?
                    .log_value;
            }
        }
    }
    let factorial: f64 = (1..=n as u64).product::<u64>() as f64;
    let pref = 2f64.powi(n as i32) * factorial * (qp.wplus() * qp.wminus()).sqrt().powi(n as i32);
    Ok(pref * acc.exp())
}

/// A constant-term parameter point mapped into BC coordinates.
#[derive(Clone, Debug)]
pub struct BcSpecialization {
    pub params: BcParameters,
    /// ∫_V I(v) dv = prefactor · J_BC.
    pub prefactor: f64,
    /// Quasi-period substitution applied by the map.
    pub period_map: String,
}

/// Map a validated S-point of type A₁, B_n or C_n onto BC parameters.
///
/// The four maps (with k_s/k_l the short/long multiplicities):
/// - A₁/B_n case (i): (γ, κ) = (k_s, −ω₊/2, −ω₋/2, −ω; k_l), prefactor 1;
/// - B_n case (ii): quasi-periods (2ω₊, ω₋),
///   (γ, κ) = (k_s, k_s−ω₊, −ω₋/2, −ω₊−ω₋/2; 2k_l), prefactor 1;
/// - C_n case (i): (γ, κ) = (k_l/2, k_l/2−ω₊/2, k_l/2−ω₋/2, k_l/2−ω; k_s),
///   prefactor 2;
/// - C_n case (ii): (γ, κ) = (k_l, k_l−ω₋/2, −ω₊/2, −ω; k_s), prefactor 2.
pub fn bc_specialize(pp: &ParameterPoint) -> Result<BcSpecialization, IdentityError> {
    pp.validate_s().map_err(IdentityError::NotInS)?;
    let (wp, wm) = (pp.qp.wplus(), pp.qp.wminus());
    let w = pp.qp.omega();
    let ks = pp.k.short;
    let kl = pp.k.long;
    let n = pp.rs.rank;

    let (qp, gamma, kappa, prefactor, period_map): (QuasiPeriods, [Complex; 4], Complex, f64, &str) =
        match (pp.rs.family, pp.case, n) {
            (Family::A, _, 1) => (
                pp.qp,
                [ks, -0.5 * wp, -0.5 * wm, -w],
                c(0.0, 0.0),
                1.0,
                "identity",
            ),
            (Family::B, IdentityCase::I, _) => (
                pp.qp,
                [ks, -0.5 * wp, -0.5 * wm, -w],
                kl,
                1.0,
                "identity",
            ),
            (Family::B, IdentityCase::II, _) => (
                QuasiPeriods::new(2.0 * wp, wm).expect("doubled quasi-period stays valid"),
                [ks, ks - wp, -0.5 * wm, -wp - 0.5 * wm],
                2.0 * kl,
                1.0,
                "(2*omega_plus, omega_minus)",
            ),
            (Family::C, IdentityCase::I, _) => (
                pp.qp,
                [
                    0.5 * kl,
                    0.5 * kl - 0.5 * wp,
                    0.5 * kl - 0.5 * wm,
                    0.5 * kl - w,
                ],
                ks,
                2.0,
                "identity",
            ),
            (Family::C, IdentityCase::II, _) => (
                pp.qp,
                [kl, kl - 0.5 * wm, -0.5 * wp, -w],
                ks,
                2.0,
                "identity",
            ),
            _ => {
                return Err(IdentityError::UnsupportedCombination {
                    family: pp.rs.family,
                    case: pp.case,
                })
            }
        };

    let params = BcParameters::new(qp, gamma, kappa, n);
    params.validate_s_bc().map_err(IdentityError::NotInSBC)?;
    Ok(BcSpecialization {
        params,
        prefactor,
        period_map: period_map.to_string(),
    })
}
