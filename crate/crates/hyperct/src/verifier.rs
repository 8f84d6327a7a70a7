//! End-to-end numerical verification of each identity, producing
//! structured reports.

use crate::hypergamma::{gamma, shintani_product, QuasiPeriods};
use crate::identities::{
    bc_integrand, bc_rhs, constant_k, ct_integrand, density_delta, density_delta_tilde,
    macdonald_n, macdonald_n_tilde, rhs_chamber, BcParameters, IdentityError, ParameterPoint,
};
use crate::numerics::{integrate_box_nd, lattice_sum, trapezoid_periodic_nd, QuadratureSpec};
use crate::rootsys::dot;
use crate::{c, mul_i, Complex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

const QPOCH_EPS: f64 = 1e-16;

/// Outcome of one identity check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct VerificationReport {
    pub identity_name: String,
    pub parameters: String,
    pub lhs: Complex,
    pub rhs: Complex,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Populated when the verification aborted before comparing sides.
    pub error: Option<String>,
    pub diagnostics: BTreeMap<String, f64>,
    pub wall_ms: f64,
}

impl VerificationReport {
    fn from_comparison(
        name: &str,
        parameters: String,
        lhs: Complex,
        rhs: Complex,
        tolerance: f64,
        diagnostics: BTreeMap<String, f64>,
        started: Instant,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / rhs.norm().max(f64::MIN_POSITIVE);
        // compare absolutely when the reference side is tiny
        let passed = if rhs.norm() < 1e-6 {
            abs_err <= tolerance
        } else {
            rel_err <= tolerance
        };
        VerificationReport {
            identity_name: name.to_string(),
            parameters,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tolerance,
            passed,
            error: None,
            diagnostics,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    fn from_error(name: &str, parameters: String, error: String, started: Instant) -> Self {
        VerificationReport {
            identity_name: name.to_string(),
            parameters,
            lhs: c(f64::NAN, f64::NAN),
            rhs: c(f64::NAN, f64::NAN),
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tolerance: f64::NAN,
            passed: false,
            error: Some(error),
            diagnostics: BTreeMap::new(),
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Default identity tolerance by rank (desk-scale wall-time budget).
pub fn default_tolerance(rank: usize) -> f64 {
    match rank {
        0 | 1 => 1e-6,
        2 => 1e-4,
        _ => 1e-3,
    }
}

fn describe_pp(pp: &ParameterPoint) -> String {
    format!(
        "{}{} case {} omega_plus={} omega_minus={} k_short={} k_long={}",
        pp.rs.family,
        pp.rs.rank,
        pp.case,
        pp.qp.wplus(),
        pp.qp.wminus(),
        pp.k.short,
        pp.k.long
    )
}

fn describe_bc(bp: &BcParameters) -> String {
    format!(
        "BC{} omega_plus={} omega_minus={} gamma=[{}, {}, {}, {}] kappa={}",
        bp.rank,
        bp.qp.wplus(),
        bp.qp.wminus(),
        bp.gamma[0],
        bp.gamma[1],
        bp.gamma[2],
        bp.gamma[3],
        bp.kappa
    )
}

fn err_string(e: &IdentityError) -> String {
    match e {
        IdentityError::NotInS(v) => format!("NotInS: {v}"),
        IdentityError::NotInSPrime(v) => format!("NotInSPrime: {v}"),
        IdentityError::NotInSBC(v) => format!("NotInSBC: {v}"),
        other => format!("{other}"),
    }
}

/// Inner spec for closed-form sides; they cost only a handful of gamma
/// evaluations, so they always run tight.
fn tight(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: spec.rel_tol.min(1e-11),
        abs_tol: spec.abs_tol.min(1e-13),
        ..spec.clone()
    }
}

/// Check the hyperbolic constant-term identity in the chamber form:
/// the integral of I over V+ in lambda-coordinates against the closed form.
pub fn verify_hyperbolic_ct(
    pp: &ParameterPoint,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> VerificationReport {
    let started = Instant::now();
    let name = "hyperbolic_ct";
    let params = describe_pp(pp);
    if let Err(v) = pp.validate_s() {
        return VerificationReport::from_error(name, params, format!("NotInS: {v}"), started);
    }
    let n = pp.rs.rank;
    if n > 3 {
        return VerificationReport::from_error(
            name,
            params,
            "rank > 3 unsupported for deterministic cubature".into(),
            started,
        );
    }

    // decay exponents c_j = Re(-<rho_k, w_j^vee>/(w+ w-)) must be negative
    let rho = pp.rs.rho_k(&pp.k);
    let ww = pp.qp.wplus() * pp.qp.wminus();
    let mut cexp = Vec::with_capacity(n);
    for j in 0..n {
        let pairing = crate::rootsys::pairing_rc(&pp.rs.fundamental_coweights[j], &rho);
        let cj = (-pairing / ww).re;
        if cj >= 0.0 {
            return VerificationReport::from_error(
                name,
                params,
                format!("decay exponent c_{} = {cj:.3e} not negative", j + 1),
                started,
            );
        }
        cexp.push(cj);
    }

    let eval_integrand = |lambda: &[f64]| -> Result<Complex, IdentityError> {
        let v = pp.rs.from_lambda(lambda);
        let vc: Vec<Complex> = v.iter().map(|&x| c(x, 0.0)).collect();
        ct_integrand(pp, &vc, spec)
    };

    // probe constant: C_est = max |I(v)| e^{-4 pi sum lambda_j c_j} on a coarse grid
    let four_pi = 4.0 * std::f64::consts::PI;
    let mut c_est = 0.0f64;
    let probes_per_axis = 5usize;
    let r0: Vec<f64> = cexp.iter().map(|cj| 2.0 / cj.abs()).collect();
    let total = probes_per_axis.pow(n as u32);
    let mut lambda = vec![0.0; n];
    for idx in 0..total {
        let mut rem = idx;
        let mut growth = 0.0;
        for j in 0..n {
            lambda[j] = r0[j] * (rem % probes_per_axis) as f64 / (probes_per_axis - 1) as f64;
            rem /= probes_per_axis;
            growth -= four_pi * cexp[j] * lambda[j];
        }
        if let Ok(v) = eval_integrand(&lambda) {
            let m = v.norm() * growth.exp();
            if m.is_finite() {
                c_est = c_est.max(m);
            }
        }
    }
    c_est = c_est.max(1e-12);

    // truncation radii: C e^{4 pi c_j R_j} < abs_tol / 10
    let radii: Vec<f64> = cexp
        .iter()
        .map(|cj| {
            ((10.0 * c_est / spec.abs_tol).ln() / (four_pi * cj.abs()) * spec.truncation_safety)
                .max(1.0)
        })
        .collect();

    let lower = vec![0.0; n];
    let lhs = match integrate_box_nd(
        |lambda| eval_integrand(lambda).unwrap_or(c(f64::NAN, f64::NAN)),
        &lower,
        &radii,
        spec,
    ) {
        Ok(r) => r,
        Err(e) => {
            return VerificationReport::from_error(name, params, format!("{e}"), started);
        }
    };
    let rhs = match rhs_chamber(pp, &tight(spec)) {
        Ok(v) => v,
        Err(e) => {
            return VerificationReport::from_error(name, params, err_string(&e), started);
        }
    };

    let mut diag = BTreeMap::new();
    diag.insert("evaluations".into(), lhs.evaluations as f64);
    diag.insert("quad_error".into(), lhs.error_estimate);
    diag.insert("c_est".into(), c_est);
    for (j, r) in radii.iter().enumerate() {
        diag.insert(format!("radius_{}", j + 1), *r);
    }
    VerificationReport::from_comparison(name, params, lhs.value, rhs, tolerance, diag, started)
}

/// Check the q-constant-term identity: the trapezoid constant term of the
/// density over the coweight torus against N, with grid-doubling control.
pub fn verify_q_constant_term(
    pp: &ParameterPoint,
    grid_m: usize,
    tolerance: f64,
) -> VerificationReport {
    let started = Instant::now();
    let name = "q_constant_term";
    let params = describe_pp(pp);
    if let Err(v) = pp.validate_s_prime() {
        return VerificationReport::from_error(name, params, format!("NotInSPrime: {v}"), started);
    }
    let n = pp.rs.rank;
    if n > 3 {
        return VerificationReport::from_error(name, params, "rank > 3 unsupported".into(), started);
    }
    let f = |lambda: &[f64]| -> Complex {
        let v = pp.rs.from_lambda(lambda);
        density_delta(pp, &v, QPOCH_EPS).unwrap_or(c(f64::NAN, f64::NAN))
    };
    let coarse = trapezoid_periodic_nd(&f, n, grid_m);
    let fine = trapezoid_periodic_nd(&f, n, 2 * grid_m);
    let rhs = match macdonald_n(pp, QPOCH_EPS) {
        Ok(v) => v,
        Err(e) => return VerificationReport::from_error(name, params, err_string(&e), started),
    };
    let mut diag = BTreeMap::new();
    diag.insert("grid_m".into(), grid_m as f64);
    diag.insert("grid_doubling_delta".into(), (fine - coarse).norm());
    diag.insert(
        "evaluations".into(),
        (grid_m.pow(n as u32) + (2 * grid_m).pow(n as u32)) as f64,
    );
    VerificationReport::from_comparison(name, params, fine, rhs, tolerance, diag, started)
}

/// Check the dual summation identity: the lattice sum of the dual density
/// over the coweight lattice against its closed form, plus base-point
/// independence.
pub fn verify_q_sum(
    pp: &ParameterPoint,
    base_lambda: &[f64],
    tail_tol: f64,
    tolerance: f64,
) -> VerificationReport {
    let started = Instant::now();
    let name = "q_sum";
    let params = describe_pp(pp);
    if let Err(v) = pp.validate_s_prime() {
        return VerificationReport::from_error(name, params, format!("NotInSPrime: {v}"), started);
    }
    let base = pp.rs.from_lambda(base_lambda);
    for alpha in &pp.rs.roots {
        let pr = dot(alpha, &base);
        if (pr - pr.round()).abs() < 1e-3 {
            return VerificationReport::from_error(
                name,
                params,
                format!("IntegralityViolation: <alpha, base_v> = {pr} is nearly integral"),
                started,
            );
        }
    }

    let generators = pp.rs.fundamental_coweights.clone();
    let summand = |base: Vec<f64>| {
        move |shift: &[f64]| -> Complex {
            let v: Vec<f64> = base.iter().zip(shift).map(|(a, b)| a + b).collect();
            density_delta_tilde(pp, &v, QPOCH_EPS).unwrap_or(c(f64::NAN, f64::NAN))
        }
    };
    let sum1 = match lattice_sum(summand(base.clone()), &generators, 2, tail_tol) {
        Ok(s) => s,
        Err(e) => return VerificationReport::from_error(name, params, format!("{e}"), started),
    };
    // independence of the base point
    let mut shifted_lambda = base_lambda.to_vec();
    shifted_lambda[0] += 0.3;
    let base2 = pp.rs.from_lambda(&shifted_lambda);
    let sum2 = match lattice_sum(summand(base2), &generators, 2, tail_tol) {
        Ok(s) => s,
        Err(e) => return VerificationReport::from_error(name, params, format!("{e}"), started),
    };
    let rhs = match macdonald_n_tilde(pp, QPOCH_EPS) {
        Ok(v) => v,
        Err(e) => return VerificationReport::from_error(name, params, err_string(&e), started),
    };

    let base_independence = (sum1.value - sum2.value).norm() / rhs.norm().max(1e-300);
    let mut diag = BTreeMap::new();
    diag.insert("lattice_radius".into(), sum1.radius as f64);
    diag.insert(
        "evaluations".into(),
        (sum1.evaluations + sum2.evaluations) as f64,
    );
    diag.insert("base_independence_rel".into(), base_independence);
    let mut report =
        VerificationReport::from_comparison(name, params, sum1.value, rhs, tolerance, diag, started);
    report.passed = report.passed && base_independence <= tolerance;
    report
}

/// Pointwise splitting identity I(i w- v) = K D(v) Dt(v) at seeded-random
/// real v; the report's lhs/rhs carry the worst point, and the residual
/// maximum is compared against the tolerance.
pub fn verify_split(
    pp: &ParameterPoint,
    count: usize,
    seed: u64,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> VerificationReport {
    let started = Instant::now();
    let name = "split";
    let params = describe_pp(pp);
    if let Err(v) = pp.validate_s_prime() {
        return VerificationReport::from_error(name, params, format!("NotInSPrime: {v}"), started);
    }
    let n = pp.rs.rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_const = constant_k(pp);
    let gspec = tight(spec);

    let mut worst = (0.0f64, c(0.0, 0.0), c(0.0, 0.0));
    let mut evaluated = 0usize;
    'points: for _ in 0..count {
        for _attempt in 0..10 {
            let lambda: Vec<f64> = (0..n).map(|_| rng.random_range(-1.2..1.2)).collect();
            let v = pp.rs.from_lambda(&lambda);
            // keep pairings away from integers so the densities are regular
            if pp
                .rs
                .roots
                .iter()
                .any(|a| (dot(a, &v) - dot(a, &v).round()).abs() < 1e-3)
            {
                continue;
            }
            let iwv: Vec<Complex> = v.iter().map(|&x| mul_i(pp.qp.wminus()) * x).collect();
            let lhs = match ct_integrand(pp, &iwv, &gspec) {
                Ok(x) => x,
                Err(IdentityError::NearSingularity { .. }) => continue,
                Err(e) => {
                    return VerificationReport::from_error(name, params, err_string(&e), started)
                }
            };
            let rhs = match (
                density_delta(pp, &v, QPOCH_EPS),
                density_delta_tilde(pp, &v, QPOCH_EPS),
            ) {
                (Ok(d), Ok(dt)) => k_const * d * dt,
                _ => continue,
            };
            let residual = (lhs - rhs).norm() / (1.0 + lhs.norm());
            evaluated += 1;
            if residual > worst.0 {
                worst = (residual, lhs, rhs);
            }
            continue 'points;
        }
        return VerificationReport::from_error(
            name,
            params,
            "NearSingularity: could not sample an admissible point in 10 attempts".into(),
            started,
        );
    }

    let mut diag = BTreeMap::new();
    diag.insert("points".into(), evaluated as f64);
    diag.insert("max_residual".into(), worst.0);
    let mut report = VerificationReport::from_comparison(
        name,
        params,
        worst.1,
        worst.2,
        tolerance,
        diag,
        started,
    );
    report.passed = worst.0 <= tolerance;
    report
}

/// Shintani's product form against the integral representation on
/// seeded-random strip points.
pub fn verify_shintani(
    qp: &QuasiPeriods,
    count: usize,
    seed: u64,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> VerificationReport {
    let started = Instant::now();
    let name = "shintani";
    let params = format!("omega_plus={} omega_minus={}", qp.wplus(), qp.wminus());
    if (qp.wplus() / qp.wminus()).im <= 0.0 {
        return VerificationReport::from_error(
            name,
            params,
            "ModularPointInvalid: omega_plus/omega_minus not in the upper half-plane".into(),
            started,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let halfwidth = qp.strip_halfwidth();
    let gspec = tight(spec);
    let mut worst = (0.0f64, c(0.0, 0.0), c(0.0, 0.0));
    let mut tested = 0usize;
    while tested < count {
        let z = c(
            rng.random_range(-2.0..2.0),
            rng.random_range(-0.8..0.8) * halfwidth,
        );
        if qp.singularity_distance(z) < 1e-3 {
            continue;
        }
        let g = match gamma(qp, z, &gspec) {
            Ok(g) => g.value,
            Err(_) => continue,
        };
        let s = match shintani_product(qp, z, QPOCH_EPS) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let dev = (s - g).norm() / g.norm().max(1e-300);
        tested += 1;
        if dev > worst.0 {
            worst = (dev, s, g);
        }
    }
    let mut diag = BTreeMap::new();
    diag.insert("points".into(), tested as f64);
    diag.insert("max_rel_deviation".into(), worst.0);
    let mut report = VerificationReport::from_comparison(
        name,
        params,
        worst.1,
        worst.2,
        tolerance,
        diag,
        started,
    );
    report.passed = worst.0 <= tolerance;
    report
}

/// Check the BC-type integral against its closed form; deterministic for
/// rank <= 2.
pub fn verify_bc(bp: &BcParameters, spec: &QuadratureSpec, tolerance: f64) -> VerificationReport {
    let started = Instant::now();
    let name = "bc";
    let params = describe_bc(bp);
    if let Err(v) = bp.validate_s_bc() {
        return VerificationReport::from_error(name, params, format!("NotInSBC: {v}"), started);
    }
    let n = bp.rank;
    if n > 2 {
        return VerificationReport::from_error(
            name,
            params,
            "rank > 2 unsupported for deterministic bc".into(),
            started,
        );
    }

    let f = |v: &[f64]| bc_integrand(bp, v, spec).unwrap_or(c(f64::NAN, f64::NAN));

    // truncation radius from sampled decay along generic rays (the
    // integrand vanishes identically on the symmetry hyperplanes, so the
    // probes stay off them)
    let mut radius = 0.0f64;
    let mut found = false;
    for t in 1..=40 {
        let tt = t as f64;
        let mut ray1 = vec![0.0; n];
        let mut ray2 = vec![0.0; n];
        for (d, (r1, r2)) in ray1.iter_mut().zip(ray2.iter_mut()).enumerate() {
            *r1 = tt * (1.0 - 0.37 * d as f64 / n as f64);
            *r2 = tt * (0.23 + 0.61 * d as f64 / n as f64);
        }
        let m = f(&ray1).norm().max(f(&ray2).norm());
        if m.is_finite() && m < spec.abs_tol / 10.0 {
            radius = (tt * spec.truncation_safety).max(tt + 1.0);
            found = true;
            break;
        }
    }
    if !found {
        return VerificationReport::from_error(
            name,
            params,
            "NonConvergence: integrand does not decay within the probe range".into(),
            started,
        );
    }

    // hyperoctahedral symmetry: the integral over R^n is 2^n times the
    // integral over the positive orthant
    let lower = vec![0.0; n];
    let upper = vec![radius; n];
    let lhs = match integrate_box_nd(&f, &lower, &upper, spec) {
        Ok(r) => r,
        Err(e) => return VerificationReport::from_error(name, params, format!("{e}"), started),
    };
    let symmetrized = 2f64.powi(n as i32) * lhs.value;
    let rhs = match bc_rhs(bp, &tight(spec)) {
        Ok(v) => v,
        Err(e) => return VerificationReport::from_error(name, params, err_string(&e), started),
    };

    let mut diag = BTreeMap::new();
    diag.insert("evaluations".into(), lhs.evaluations as f64);
    diag.insert("quad_error".into(), lhs.error_estimate);
    diag.insert("radius".into(), radius);
    VerificationReport::from_comparison(name, params, symmetrized, rhs, tolerance, diag, started)
}

/// One verification request inside a sweep.
#[derive(Clone, Debug)]
pub enum VerifyJob {
    HyperbolicCt {
        pp: ParameterPoint,
        spec: QuadratureSpec,
        tolerance: f64,
    },
    QConstantTerm {
        pp: ParameterPoint,
        grid_m: usize,
        tolerance: f64,
    },
    QSum {
        pp: ParameterPoint,
        base_lambda: Vec<f64>,
        tail_tol: f64,
        tolerance: f64,
    },
    Split {
        pp: ParameterPoint,
        count: usize,
        seed: u64,
        spec: QuadratureSpec,
        tolerance: f64,
    },
    Shintani {
        qp: QuasiPeriods,
        count: usize,
        seed: u64,
        spec: QuadratureSpec,
        tolerance: f64,
    },
    Bc {
        bp: BcParameters,
        spec: QuadratureSpec,
        tolerance: f64,
    },
}

fn run_job(job: &VerifyJob) -> VerificationReport {
    match job {
        VerifyJob::HyperbolicCt { pp, spec, tolerance } => {
            verify_hyperbolic_ct(pp, spec, *tolerance)
        }
        VerifyJob::QConstantTerm { pp, grid_m, tolerance } => {
            verify_q_constant_term(pp, *grid_m, *tolerance)
        }
        VerifyJob::QSum {
            pp,
            base_lambda,
            tail_tol,
            tolerance,
        } => verify_q_sum(pp, base_lambda, *tail_tol, *tolerance),
        VerifyJob::Split {
            pp,
            count,
            seed,
            spec,
            tolerance,
        } => verify_split(pp, *count, *seed, spec, *tolerance),
        VerifyJob::Shintani {
            qp,
            count,
            seed,
            spec,
            tolerance,
        } => verify_shintani(qp, *count, *seed, spec, *tolerance),
        VerifyJob::Bc { bp, spec, tolerance } => verify_bc(bp, spec, *tolerance),
    }
}

/// Run all jobs; per-point failures are captured in the reports, never a
/// panic or an early exit. Reports come back in input order.
pub fn sweep(jobs: &[VerifyJob]) -> Vec<VerificationReport> {
    jobs.par_iter().map(run_job).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build, Family, IdentityCase, Multiplicity};

    fn polar(r: f64, theta: f64) -> Complex {
        Complex::from_polar(r, theta)
    }

    fn a1_sprime() -> ParameterPoint {
        let pi = std::f64::consts::PI;
        ParameterPoint::new(
            QuasiPeriods::new(polar(1.0, -pi / 6.0), polar(1.0, -pi / 3.0)).unwrap(),
            build(Family::A, 1).unwrap(),
            IdentityCase::I,
            Multiplicity::uniform(polar(0.3, -7.0 * pi / 12.0)),
        )
    }

    fn a1_colinear() -> ParameterPoint {
        let w = polar(1.0, -std::f64::consts::PI / 4.0);
        ParameterPoint::new(
            QuasiPeriods::new(w, w).unwrap(),
            build(Family::A, 1).unwrap(),
            IdentityCase::I,
            Multiplicity::uniform(c(-1.0, -1.0)),
        )
    }

    fn spec1() -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            ..QuadratureSpec::default()
        }
    }

    #[test]
    fn hyperbolic_ct_a1_colinear_passes() {
        let report = verify_hyperbolic_ct(&a1_colinear(), &spec1(), 1e-6);
        assert!(report.error.is_none(), "{:?}", report.error);
        assert!(report.passed, "rel_err = {:.3e}", report.rel_err);
    }

    #[test]
    fn hyperbolic_ct_rejects_invalid_point() {
        let mut pp = a1_colinear();
        pp.k = Multiplicity::uniform(c(1.0, 0.0));
        let report = verify_hyperbolic_ct(&pp, &spec1(), 1e-6);
        assert!(!report.passed);
        let msg = report.error.unwrap();
        assert!(msg.contains("NotInS"), "{msg}");
    }

    #[test]
    fn q_constant_term_a1_passes() {
        let report = verify_q_constant_term(&a1_sprime(), 32, 1e-7);
        assert!(report.error.is_none(), "{:?}", report.error);
        assert!(report.passed, "rel_err = {:.3e}", report.rel_err);
        assert!(report.diagnostics["grid_doubling_delta"] < 1e-9);
    }

    #[test]
    fn q_sum_a1_passes_and_is_base_independent() {
        let report = verify_q_sum(&a1_sprime(), &[0.37], 1e-12, 1e-7);
        assert!(report.error.is_none(), "{:?}", report.error);
        assert!(report.passed, "rel_err = {:.3e}", report.rel_err);
        assert!(report.diagnostics["base_independence_rel"] < 1e-7);
    }

    #[test]
    fn q_sum_rejects_integral_base() {
        let report = verify_q_sum(&a1_sprime(), &[1.0], 1e-12, 1e-7);
        assert!(report.error.unwrap().contains("IntegralityViolation"));
    }

    #[test]
    fn split_a1_passes() {
        let report = verify_split(&a1_sprime(), 25, 7, &spec1(), 1e-8);
        assert!(report.error.is_none(), "{:?}", report.error);
        assert!(
            report.passed,
            "max residual {:.3e}",
            report.diagnostics["max_residual"]
        );
    }

    #[test]
    fn shintani_passes_and_rejects_colinear() {
        let pp = a1_sprime();
        let report = verify_shintani(&pp.qp, 20, 11, &spec1(), 1e-10);
        assert!(report.passed, "{:?}", report.diagnostics);
        let col = a1_colinear();
        let rejected = verify_shintani(&col.qp, 5, 11, &spec1(), 1e-10);
        assert!(rejected.error.unwrap().contains("ModularPointInvalid"));
    }

    #[test]
    fn bc_rank1_passes() {
        let pp = a1_sprime();
        let bp = BcParameters::new(
            pp.qp,
            [c(-0.3, -0.1), c(-0.25, 0.05), c(-0.2, -0.2), c(-0.35, 0.1)],
            c(0.0, 0.0),
            1,
        );
        let report = verify_bc(&bp, &spec1(), 1e-6);
        assert!(report.error.is_none(), "{:?}", report.error);
        assert!(report.passed, "rel_err = {:.3e}", report.rel_err);
    }

    #[test]
    fn bc_rejects_rank_three() {
        let pp = a1_sprime();
        let bp = BcParameters::new(
            pp.qp,
            [c(-0.3, -0.1), c(-0.25, 0.05), c(-0.2, -0.2), c(-0.35, 0.1)],
            c(-0.2, -0.15),
            3,
        );
        let report = verify_bc(&bp, &spec1(), 1e-4);
        assert!(report.error.unwrap().contains("rank > 2"));
    }

    #[test]
    fn sweep_preserves_order_and_captures_errors() {
        let good = a1_sprime();
        let mut bad = a1_sprime();
        bad.k = Multiplicity::uniform(c(0.4, 0.0));
        let jobs = vec![
            VerifyJob::QSum {
                pp: good.clone(),
                base_lambda: vec![0.37],
                tail_tol: 1e-12,
                tolerance: 1e-7,
            },
            VerifyJob::QConstantTerm {
                pp: bad,
                grid_m: 16,
                tolerance: 1e-7,
            },
            VerifyJob::QConstantTerm {
                pp: good,
                grid_m: 32,
                tolerance: 1e-7,
            },
        ];
        let reports = sweep(&jobs);
        assert_eq!(reports.len(), 3);
        assert_eq!(reports[0].identity_name, "q_sum");
        assert!(reports[0].passed);
        assert!(reports[1].error.as_deref().unwrap().contains("NotInSPrime"));
        assert!(reports[2].passed);
    }

    #[test]
    fn empty_sweep() {
        assert!(sweep(&[]).is_empty());
    }

    #[test]
    fn reports_deterministic_for_fixed_seed() {
        let pp = a1_sprime();
        let a = verify_split(&pp, 10, 3, &spec1(), 1e-8);
        let b = verify_split(&pp, 10, 3, &spec1(), 1e-8);
        assert_eq!(a.lhs, b.lhs);
        assert_eq!(a.rhs, b.rhs);
        assert_eq!(a.diagnostics["max_residual"], b.diagnostics["max_residual"]);
    }
}
