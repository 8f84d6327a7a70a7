//! Frozen parameter points shared by the acceptance and invariant suites.
//! Every point is asserted against its domain validator before use.

use hyperct::hypergamma::QuasiPeriods;
use hyperct::identities::{BcParameters, ParameterPoint};
use hyperct::numerics::QuadratureSpec;
use hyperct::rootsys::{build, Family, IdentityCase, Multiplicity};
use hyperct::{c, Complex};
use std::f64::consts::PI;

pub fn polar(r: f64, theta_over_pi: f64) -> Complex {
    Complex::from_polar(r, theta_over_pi * PI)
}

/// The quasi-period pair used for most S' work: (e^{-i pi/6}, e^{-i pi/3}).
pub fn qp_a() -> QuasiPeriods {
    QuasiPeriods::new(polar(1.0, -1.0 / 6.0), polar(1.0, -1.0 / 3.0)).unwrap()
}

/// A second pair: (1.0 e^{-i pi/5}, 0.9 e^{-i pi/3}).
pub fn qp_b() -> QuasiPeriods {
    QuasiPeriods::new(polar(1.0, -0.2), polar(0.9, -1.0 / 3.0)).unwrap()
}

/// Co-linear quasi-periods (|q| = 1).
pub fn qp_colinear() -> QuasiPeriods {
    let w = polar(1.0, -0.25);
    QuasiPeriods::new(w, w).unwrap()
}

pub fn point(
    qp: QuasiPeriods,
    family: Family,
    rank: usize,
    case: IdentityCase,
    ks: Complex,
    kl: Complex,
) -> ParameterPoint {
    ParameterPoint::new(qp, build(family, rank).unwrap(), case, Multiplicity::new(ks, kl))
}

/// The six A1 S-points of the constant-term acceptance run; the first is
/// the co-linear |q| = 1 point, the last sits on the small-|k| ray.
pub fn a1_ct_points() -> Vec<ParameterPoint> {
    let pts = vec![
        point(
            qp_colinear(),
            Family::A,
            1,
            IdentityCase::I,
            c(-1.0, -1.0),
            c(-1.0, -1.0),
        ),
        point(
            qp_a(),
            Family::A,
            1,
            IdentityCase::I,
            polar(0.3, -7.0 / 12.0),
            polar(0.3, -7.0 / 12.0),
        ),
        point(
            QuasiPeriods::new(polar(1.0, -1.0 / 3.0), polar(1.0, -1.0 / 6.0)).unwrap(),
            Family::A,
            1,
            IdentityCase::I,
            polar(0.3, -7.0 / 12.0),
            polar(0.3, -7.0 / 12.0),
        ),
        point(
            QuasiPeriods::new(polar(1.2, -0.2), polar(0.8, -0.4)).unwrap(),
            Family::A,
            1,
            IdentityCase::I,
            polar(0.55, -0.59),
            polar(0.55, -0.59),
        ),
        point(
            QuasiPeriods::new(polar(0.9, -1.0 / 12.0), polar(1.1, -5.0 / 12.0)).unwrap(),
            Family::A,
            1,
            IdentityCase::I,
            polar(0.4, -0.55),
            polar(0.4, -0.55),
        ),
        point(
            qp_colinear(),
            Family::A,
            1,
            IdentityCase::I,
            c(-0.3, -0.3),
            c(-0.3, -0.3),
        ),
    ];
    for p in &pts {
        assert!(p.in_s(), "A1 CT point outside S: {:?}", p.validate_s());
    }
    pts
}

/// Two S-points per rank-2 family; G2 uses smaller multiplicities so the
/// closed form stays well away from underflow.
pub fn rank2_ct_points(family: Family, case: IdentityCase) -> Vec<ParameterPoint> {
    let pts = if family == Family::G {
        vec![
            point(
                qp_a(),
                family,
                2,
                case,
                polar(0.3, -0.5837),
                polar(0.3485, -0.5956),
            ),
            point(
                qp_a(),
                family,
                2,
                case,
                polar(0.35, -0.57),
                polar(0.4, -0.6),
            ),
        ]
    } else {
        vec![
            point(
                qp_a(),
                family,
                2,
                case,
                polar(0.6, -0.5698),
                polar(0.7, -0.6004),
            ),
            point(
                qp_b(),
                family,
                2,
                case,
                polar(0.45, -0.58),
                polar(0.5, -0.6),
            ),
        ]
    };
    for p in &pts {
        assert!(
            p.in_s(),
            "{family}{} CT point outside S: {:?}",
            2,
            p.validate_s()
        );
    }
    pts
}

/// S' points for the q-side identities (splitting, q-CT, q-sum, chain).
pub fn sprime_point(family: Family, rank: usize, case: IdentityCase) -> ParameterPoint {
    let (ks, kl) = if rank == 1 {
        (polar(0.3, -7.0 / 12.0), polar(0.3, -7.0 / 12.0))
    } else {
        (polar(0.25, -7.0 / 12.0), polar(0.35, -0.55))
    };
    let pp = point(qp_a(), family, rank, case, ks, kl);
    assert!(
        pp.in_s_prime(),
        "{family}{rank} point outside S': {:?}",
        pp.validate_s_prime()
    );
    pp
}

/// Families and ranks of the default desk-scale sweep.
pub fn default_families() -> Vec<(Family, usize)> {
    vec![
        (Family::A, 1),
        (Family::A, 2),
        (Family::B, 2),
        (Family::C, 2),
        (Family::G, 2),
    ]
}

pub fn bc_point_rank1() -> BcParameters {
    let bp = BcParameters::new(
        qp_a(),
        [c(-0.3, -0.1), c(-0.25, 0.05), c(-0.2, -0.2), c(-0.35, 0.1)],
        c(0.0, 0.0),
        1,
    );
    assert!(bp.in_s_bc(), "{:?}", bp.validate_s_bc());
    bp
}

pub fn bc_point_rank2() -> BcParameters {
    let bp = BcParameters::new(
        qp_a(),
        [c(-0.3, -0.1), c(-0.25, 0.05), c(-0.2, -0.2), c(-0.35, 0.1)],
        c(-0.2, -0.15),
        2,
    );
    assert!(bp.in_s_bc(), "{:?}", bp.validate_s_bc());
    bp
}

/// Quadrature settings for rank-1 verifications.
pub fn spec_rank1() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-9,
        abs_tol: 1e-12,
        ..QuadratureSpec::default()
    }
}

/// Quadrature settings for rank-2 verifications (relative-driven; the
/// absolute floor sits below the smallest closed-form values involved).
pub fn spec_rank2() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-5,
        abs_tol: 1e-13,
        ..QuadratureSpec::default()
    }
}

/// Tight settings for closed-form and pointwise work.
pub fn spec_tight() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-14,
        ..QuadratureSpec::default()
    }
}
