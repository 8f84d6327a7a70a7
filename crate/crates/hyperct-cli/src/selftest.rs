//! Built-in invariant suite: a fast sanity pass over every identity the
//! library verifies, printing one line per check.

use hyperct::hypergamma::{gamma, QuasiPeriods};
use hyperct::identities::{constant_k, macdonald_n, macdonald_n_tilde, rhs_chamber, ParameterPoint};
use hyperct::numerics::QuadratureSpec;
use hyperct::rootsys::{build, Family, IdentityCase, Multiplicity};
use hyperct::verifier::{
    verify_bc, verify_hyperbolic_ct, verify_q_constant_term, verify_q_sum, verify_shintani,
    verify_split,
};
use hyperct::identities::BcParameters;
use hyperct::{c, mul_i, Complex};

fn polar(r: f64, theta: f64) -> Complex {
    Complex::from_polar(r, theta)
}

fn check(name: &str, ok: bool, detail: String) -> bool {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

/// Run the suite; returns the process exit code (0 on success).
pub fn run_selftest() -> i32 {
    let pi = std::f64::consts::PI;
    let spec = QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-14,
        ..QuadratureSpec::default()
    };
    let mut all = true;

    // special values of the hyperbolic gamma function
    let qp11 = QuasiPeriods::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
    let g0 = gamma(&qp11, c(0.0, 0.0), &spec).unwrap().value;
    all &= check("G(0) = 1", (g0 - c(1.0, 0.0)).norm() < 1e-12, format!("{g0}"));
    let gh = gamma(&qp11, c(0.0, 0.5), &spec).unwrap().value;
    all &= check(
        "G(i/2) = sqrt(2)",
        (gh - c(2f64.sqrt(), 0.0)).norm() < 1e-10,
        format!("{gh}"),
    );
    let qp21 = QuasiPeriods::new(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
    let gr = gamma(&qp21, c(0.0, -0.5), &spec).unwrap().value;
    all &= check(
        "G(i(-w+ + w-)/2) = sqrt(w-/w+)",
        (gr - c(0.5f64.sqrt(), 0.0)).norm() < 1e-10,
        format!("{gr}"),
    );

    // reflection at a generic complex point
    let qpc = QuasiPeriods::new(c(1.0, -0.2), c(0.9, -0.35)).unwrap();
    let z = c(0.4, 0.1);
    let refl = gamma(&qpc, z, &spec).unwrap().value * gamma(&qpc, -z, &spec).unwrap().value;
    all &= check(
        "reflection G(z)G(-z) = 1",
        (refl - c(1.0, 0.0)).norm() < 1e-10,
        format!("{refl}"),
    );

    // S' parameter point for the q-side identities
    let qp = QuasiPeriods::new(polar(1.0, -pi / 6.0), polar(1.0, -pi / 3.0)).unwrap();
    let pp = ParameterPoint::new(
        qp,
        build(Family::A, 1).unwrap(),
        IdentityCase::I,
        Multiplicity::uniform(polar(0.3, -7.0 * pi / 12.0)),
    );

    let r = verify_shintani(&qp, 25, 11, &spec, 1e-10);
    all &= check("shintani product", r.passed, format!("max dev {:.2e}", r.diagnostics["max_rel_deviation"]));

    let r = verify_split(&pp, 25, 7, &spec, 1e-8);
    all &= check("splitting identity", r.passed, format!("max residual {:.2e}", r.diagnostics["max_residual"]));

    let r = verify_q_constant_term(&pp, 32, 1e-7);
    all &= check("q constant term", r.passed, format!("rel err {:.2e}", r.rel_err));

    let r = verify_q_sum(&pp, &[0.37], 1e-12, 1e-7);
    all &= check("q summation", r.passed, format!("rel err {:.2e}", r.rel_err));

    // closed-form chain without quadrature
    let chain = mul_i(qp.wminus())
        * constant_k(&pp)
        * macdonald_n(&pp, 1e-16).unwrap()
        * macdonald_n_tilde(&pp, 1e-16).unwrap();
    let rhs = pp.rs.weyl_order as f64 * rhs_chamber(&pp, &spec).unwrap();
    all &= check(
        "closed-form chain",
        (chain - rhs).norm() < 1e-9 * rhs.norm(),
        format!("rel dev {:.2e}", (chain - rhs).norm() / rhs.norm()),
    );

    // the co-linear |q| = 1 constant-term identity
    let wcol = polar(1.0, -pi / 4.0);
    let ppc = ParameterPoint::new(
        QuasiPeriods::new(wcol, wcol).unwrap(),
        build(Family::A, 1).unwrap(),
        IdentityCase::I,
        Multiplicity::uniform(c(-1.0, -1.0)),
    );
    let quad_spec = QuadratureSpec {
        rel_tol: 1e-9,
        abs_tol: 1e-12,
        ..QuadratureSpec::default()
    };
    let r = verify_hyperbolic_ct(&ppc, &quad_spec, 1e-6);
    all &= check("hyperbolic CT at |q| = 1", r.passed, format!("rel err {:.2e}", r.rel_err));

    // rank-1 BC integral
    let bp = BcParameters::new(
        qp,
        [c(-0.3, -0.1), c(-0.25, 0.05), c(-0.2, -0.2), c(-0.35, 0.1)],
        c(0.0, 0.0),
        1,
    );
    let r = verify_bc(&bp, &quad_spec, 1e-6);
    all &= check("BC integral (rank 1)", r.passed, format!("rel err {:.2e}", r.rel_err));

    if all {
        println!("selftest: all checks passed");
        0
    } else {
        println!("selftest: FAILURES detected");
        1
    }
}
