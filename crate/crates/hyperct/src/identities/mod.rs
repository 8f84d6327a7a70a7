//! Closed-form quantities and integrands of the constant-term identities:
//! parameter-space validators, the integrand I(v) and its sinh form, the
//! q-densities Δ and Δ̃, the constants K/N/Ñ, the evaluated right-hand
//! sides, and the BC-type integral family with its specializations.

mod bc;
mod ct;

pub use bc::{bc_integrand, bc_rhs, bc_specialize, BcSpecialization};
pub use ct::{
    constant_k, ct_integrand, ct_integrand_alt, density_delta, density_delta_tilde, macdonald_n,
    macdonald_n_tilde, rhs_chamber, rhs_weyl,
};

use crate::hypergamma::{GammaError, QuasiPeriods};
use crate::rootsys::{
    coroot, dot, Family, IdentityCase, Multiplicity, RootSystemData, RootSystemError,
};
use crate::{mul_i, Complex};
use std::f64::consts::TAU;
use thiserror::Error;

/// A named parameter-domain inequality that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainViolation {
    pub constraint: String,
}

impl std::fmt::Display for DomainViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.constraint)
    }
}

fn violation(s: &str) -> DomainViolation {
    DomainViolation {
        constraint: s.to_string(),
    }
}

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("parameters outside S: {0}")]
    NotInS(DomainViolation),
    #[error("parameters outside S': {0}")]
    NotInSPrime(DomainViolation),
    #[error("parameters outside S_BC: {0}")]
    NotInSBC(DomainViolation),
    #[error("<alpha, v> = {value} is within tolerance of an integer")]
    IntegralityViolation { value: f64 },
    #[error("argument within {distance:.3e} of the pole locus")]
    NearSingularity { distance: f64 },
    #[error("no BC specialization for family {family} case {case}")]
    UnsupportedCombination { family: Family, case: IdentityCase },
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Root(#[from] RootSystemError),
}

/// Quasi-periods, root system, case decoration and multiplicity; the full
/// parameter point of a generalized constant-term identity.
#[derive(Clone, Debug)]
pub struct ParameterPoint {
    pub qp: QuasiPeriods,
    pub rs: RootSystemData,
    pub case: IdentityCase,
    pub k: Multiplicity,
}

impl ParameterPoint {
    pub fn new(qp: QuasiPeriods, rs: RootSystemData, case: IdentityCase, k: Multiplicity) -> Self {
        ParameterPoint { qp, rs, case, k }
    }

    /// Multiplicity values actually taken on this root system.
    fn k_values(&self) -> Vec<Complex> {
        let mut v = vec![self.k.short];
        if self.rs.has_long_roots() {
            v.push(self.k.long);
        }
        v
    }

    /// Membership in S: ω± ∈ ℂ₊, ω₊ω₋ ∈ ℍ₋, k_α ∈ ℂ₋ ∩ ω₊ω₋ℂ₊.
    pub fn validate_s(&self) -> Result<(), DomainViolation> {
        let (wp, wm) = (self.qp.wplus(), self.qp.wminus());
        if wp.re <= 0.0 {
            return Err(violation("ω₊ ∉ ℂ₊"));
        }
        if wm.re <= 0.0 {
            return Err(violation("ω₋ ∉ ℂ₊"));
        }
        if (wp * wm).im >= 0.0 {
            return Err(violation("ω₊ω₋ ∉ ℍ₋"));
        }
        for k in self.k_values() {
            if k.re >= 0.0 {
                return Err(violation("k ∉ ℂ₋"));
            }
            if (k / (wp * wm)).re <= 0.0 {
                return Err(violation("k ∉ ω₊ω₋ℂ₊"));
            }
        }
        Ok(())
    }

    /// The quasi-period conditions of S′ alone (these force |q_α| < 1 and
    /// |q̃_α| < 1, which is what pointwise density evaluation needs).
    pub fn validate_s_prime_periods(&self) -> Result<(), DomainViolation> {
        let (wp, wm) = (self.qp.wplus(), self.qp.wminus());
        if wp.re <= 0.0 || wp.im >= 0.0 {
            return Err(violation("ω₊ ∉ ℂ₊∩ℍ₋"));
        }
        if wm.re <= 0.0 || wm.im >= 0.0 {
            return Err(violation("ω₋ ∉ ℂ₊∩ℍ₋"));
        }
        if (wp / wm).im <= 0.0 {
            return Err(violation("ω₊/ω₋ ∉ ℍ₊"));
        }
        Ok(())
    }

    /// Membership in S′: ω± ∈ ℂ₊∩ℍ₋, ω₊/ω₋ ∈ ℍ₊,
    /// k_α ∈ ℂ₋ ∩ ω₊ℂ₊ ∩ (ω₋ℍ₊ − ω₊).
    pub fn validate_s_prime(&self) -> Result<(), DomainViolation> {
        self.validate_s_prime_periods()?;
        let (wp, wm) = (self.qp.wplus(), self.qp.wminus());
        for k in self.k_values() {
            if k.re >= 0.0 {
                return Err(violation("k ∉ ℂ₋"));
            }
            if (k / wp).re <= 0.0 {
                return Err(violation("k ∉ ω₊ℂ₊"));
            }
            if ((k + wp) / wm).im <= 0.0 {
                return Err(violation("k ∉ ω₋ℍ₊−ω₊"));
            }
        }
        Ok(())
    }

    pub fn in_s(&self) -> bool {
        self.validate_s().is_ok()
    }

    pub fn in_s_prime(&self) -> bool {
        self.validate_s_prime().is_ok()
    }

    /// u_α for a root.
    pub fn u_of(&self, alpha: &[f64]) -> f64 {
        self.case.u(dot(alpha, alpha))
    }

    /// ω_α = (ω₊ + u_α ω₋)/2.
    pub fn omega_alpha(&self, alpha: &[f64]) -> Complex {
        0.5 * (self.qp.wplus() + self.u_of(alpha) * self.qp.wminus())
    }

    /// q_α = exp(2πi ω₊ / (u_α ω₋)).
    pub fn q_alpha(&self, alpha: &[f64]) -> Complex {
        (TAU * mul_i(self.qp.wplus() / (self.u_of(alpha) * self.qp.wminus()))).exp()
    }

    /// q̃_α = exp(−2πi u_α ω₋ / ω₊).
    pub fn qtilde_alpha(&self, alpha: &[f64]) -> Complex {
        self.qtilde_alpha_pow(alpha, Complex::new(1.0, 0.0))
    }

    /// t_α = exp(−2πi k_α / (u_α ω₋)).
    pub fn t_alpha(&self, alpha: &[f64]) -> Complex {
        let k = self.rs.k_of(alpha, &self.k);
        (-TAU * mul_i(k / (self.u_of(alpha) * self.qp.wminus()))).exp()
    }

    /// t̃_α = exp(−2πi k_α / ω₊).
    pub fn ttilde_alpha(&self, alpha: &[f64]) -> Complex {
        let k = self.rs.k_of(alpha, &self.k);
        (-TAU * mul_i(k / self.qp.wplus())).exp()
    }

    /// q̃_α^z = exp(−2πi u_α ω₋ z / ω₊), defined via the exponential for
    /// branch safety.
    pub fn qtilde_alpha_pow(&self, alpha: &[f64], z: Complex) -> Complex {
        (-TAU * mul_i(self.u_of(alpha) * self.qp.wminus() * z / self.qp.wplus())).exp()
    }

    /// <ρ_k, α∨> for a positive root.
    pub fn rho_pairing(&self, alpha: &[f64]) -> Complex {
        let rho = self.rs.rho_k(&self.k);
        let cr = coroot(alpha).expect("roots are nonzero");
        crate::rootsys::pairing_rc(&cr, &rho)
    }
}

/// BC-type parameters (ω₊, ω₋, γ₁..γ₄, κ) for the J_BC integral.
#[derive(Clone, Debug)]
pub struct BcParameters {
    pub qp: QuasiPeriods,
    pub gamma: [Complex; 4],
    /// Long-root coupling; ignored (and conventionally zero) when rank = 1.
    pub kappa: Complex,
    pub rank: usize,
}

impl BcParameters {
    pub fn new(qp: QuasiPeriods, gamma: [Complex; 4], kappa: Complex, rank: usize) -> Self {
        BcParameters {
            qp,
            gamma,
            kappa,
            rank,
        }
    }

    /// |γ| = γ₁ + γ₂ + γ₃ + γ₄.
    pub fn gamma_sum(&self) -> Complex {
        self.gamma.iter().sum()
    }

    /// Membership in S_BC (κ conditions dropped at rank 1).
    pub fn validate_s_bc(&self) -> Result<(), DomainViolation> {
        let (wp, wm) = (self.qp.wplus(), self.qp.wminus());
        if wp.re <= 0.0 {
            return Err(violation("ω₊ ∉ ℂ₊"));
        }
        if wm.re <= 0.0 {
            return Err(violation("ω₋ ∉ ℂ₊"));
        }
        if (wp * wm).im >= 0.0 {
            return Err(violation("ω₊ω₋ ∉ ℍ₋"));
        }
        for (r, g) in self.gamma.iter().enumerate() {
            if g.re >= 0.0 {
                return Err(violation(&format!("γ{} ∉ ℂ₋", r + 1)));
            }
        }
        if ((wp + wm + self.gamma_sum()) / (wp * wm)).re <= 0.0 {
            return Err(violation("ω₊+ω₋+|γ| ∉ ω₊ω₋ℂ₊"));
        }
        if self.rank >= 2 {
            if self.kappa.re >= 0.0 {
                return Err(violation("κ ∉ ℂ₋"));
            }
            if (self.kappa / (wp * wm)).re <= 0.0 {
                return Err(violation("κ ∉ ω₊ω₋ℂ₊"));
            }
        }
        Ok(())
    }

    pub fn in_s_bc(&self) -> bool {
        self.validate_s_bc().is_ok()
    }

    /// Short vectors ±εⱼ of the BC realization.
    pub fn r_short(&self) -> Vec<Vec<f64>> {
        let n = self.rank;
        let mut out = Vec::with_capacity(2 * n);
        for j in 0..n {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; n];
                v[j] = s;
                out.push(v);
            }
        }
        out
    }

    /// Long vectors ±(ε_r ± ε_s), empty at rank 1.
    pub fn r_long(&self) -> Vec<Vec<f64>> {
        let n = self.rank;
        let mut out = Vec::new();
        for r in 0..n {
            for s in (r + 1)..n {
                for s1 in [1.0, -1.0] {
                    for s2 in [1.0, -1.0] {
                        let mut v = vec![0.0; n];
                        v[r] = s1;
                        v[s] = s2;
                        out.push(v);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::rootsys::build;

    fn polar(r: f64, theta: f64) -> Complex {
        Complex::from_polar(r, theta)
    }

    /// The co-linear |q| = 1 point used throughout the verification suite.
    pub(crate) fn a1_colinear() -> ParameterPoint {
        let w = polar(1.0, -std::f64::consts::PI / 4.0);
        ParameterPoint::new(
            QuasiPeriods::new(w, w).unwrap(),
            build(Family::A, 1).unwrap(),
            IdentityCase::I,
            Multiplicity::uniform(c(-1.0, -1.0)),
        )
    }

    /// An S ∩ S′ point for A₁.
    pub(crate) fn a1_sprime() -> ParameterPoint {
        let pi = std::f64::consts::PI;
        ParameterPoint::new(
            QuasiPeriods::new(polar(1.0, -pi / 6.0), polar(1.0, -pi / 3.0)).unwrap(),
            build(Family::A, 1).unwrap(),
            IdentityCase::I,
            Multiplicity::uniform(polar(0.3, -7.0 * pi / 12.0)),
        )
    }

    pub(crate) fn rank2_sprime(family: Family, case: IdentityCase) -> ParameterPoint {
        let pi = std::f64::consts::PI;
        ParameterPoint::new(
            QuasiPeriods::new(polar(1.0, -pi / 6.0), polar(1.0, -pi / 3.0)).unwrap(),
            build(family, 2).unwrap(),
            case,
            Multiplicity::new(polar(0.25, -7.0 * pi / 12.0), polar(0.35, -0.55 * pi)),
        )
    }

    #[test]
    fn colinear_point_is_in_s() {
        let pp = a1_colinear();
        assert!(pp.in_s(), "{:?}", pp.validate_s());
        // co-linear quasi-periods: |q| = 1, so the accessor must refuse
        assert!(pp.qp.q().is_err());
    }

    #[test]
    fn sprime_point_is_in_both() {
        let pp = a1_sprime();
        assert!(pp.in_s());
        assert!(pp.in_s_prime(), "{:?}", pp.validate_s_prime());
        assert!(pp.qp.q().unwrap().norm() < 1.0);
        assert!(pp.qp.qtilde().unwrap().norm() < 1.0);
    }

    #[test]
    fn validators_reject_boundaries() {
        // Re(omega_plus) = 0 is rejected at construction already
        assert!(QuasiPeriods::new(c(0.0, 1.0), c(1.0, 0.0)).is_err());
        // real positive k violates "k ∉ ℂ₋"
        let mut pp = a1_colinear();
        pp.k = Multiplicity::uniform(c(1.0, 0.0));
        let e = pp.validate_s().unwrap_err();
        assert!(e.constraint.contains("k ∉ ℂ₋"), "{e}");
        // Im(omega_plus omega_minus) = 0
        let pp = ParameterPoint::new(
            QuasiPeriods::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap(),
            build(Family::A, 1).unwrap(),
            IdentityCase::I,
            Multiplicity::uniform(c(-0.3, -0.3)),
        );
        let e = pp.validate_s().unwrap_err();
        assert!(e.constraint.contains("ω₊ω₋ ∉ ℍ₋"), "{e}");
    }

    #[test]
    fn validators_are_pure_predicates() {
        let pp = a1_sprime();
        assert_eq!(pp.in_s(), pp.in_s());
        assert_eq!(pp.in_s_prime(), pp.in_s_prime());
    }

    #[test]
    fn t_and_q_consistency() {
        // t_alpha = q_alpha^{-k/omega_plus} and ttilde = qtilde^{k/(u omega_minus)}
        let pp = rank2_sprime(Family::C, IdentityCase::II);
        for alpha in pp.rs.positive_roots.clone() {
            let u = pp.u_of(&alpha);
            let k = pp.rs.k_of(&alpha, &pp.k);
            let t = pp.t_alpha(&alpha);
            let q_pow = (TAU * mul_i(pp.qp.wplus() * (-k / pp.qp.wplus())
                / (u * pp.qp.wminus())))
            .exp();
            assert!((t - q_pow).norm() < 1e-12);
            let tt = pp.ttilde_alpha(&alpha);
            let qt_pow = pp.qtilde_alpha_pow(&alpha, k / (u * pp.qp.wminus()));
            assert!((tt - qt_pow).norm() < 1e-12);
        }
    }

    #[test]
    fn bc_point_validation() {
        let pi = std::f64::consts::PI;
        let qp = QuasiPeriods::new(polar(1.0, -pi / 6.0), polar(1.0, -pi / 3.0)).unwrap();
        let bp = BcParameters::new(
            qp,
            [c(-0.3, -0.1), c(-0.25, 0.05), c(-0.2, -0.2), c(-0.35, 0.1)],
            c(-0.2, -0.15),
            2,
        );
        assert!(bp.in_s_bc(), "{:?}", bp.validate_s_bc());
        let mut bad = bp.clone();
        bad.gamma[2] = c(0.1, 0.0);
        assert!(bad
            .validate_s_bc()
            .unwrap_err()
            .constraint
            .contains("γ3 ∉ ℂ₋"));
        let mut bad = bp.clone();
        bad.kappa = c(0.2, 0.0);
        assert!(bad.validate_s_bc().is_err());
        // kappa constraint dropped at rank 1
        let mut r1 = bp.clone();
        r1.rank = 1;
        r1.kappa = c(0.2, 0.0);
        assert!(r1.in_s_bc());
    }

    #[test]
    fn bc_vector_sets() {
        let qp = QuasiPeriods::new(c(1.0, -0.1), c(1.0, -0.4)).unwrap();
        let bp = BcParameters::new(qp, [c(-0.1, 0.0); 4], c(0.0, 0.0), 1);
        assert_eq!(bp.r_short().len(), 2);
        assert!(bp.r_long().is_empty());
        let bp2 = BcParameters::new(qp, [c(-0.1, 0.0); 4], c(-0.1, -0.1), 3);
        assert_eq!(bp2.r_short().len(), 6);
        assert_eq!(bp2.r_long().len(), 12);
    }
}
