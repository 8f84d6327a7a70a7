//! Sweep configuration: a JSON file with a `defaults` object and a
//! `points` array. Unknown keys are rejected.

use hyperct::hypergamma::QuasiPeriods;
use hyperct::identities::{BcParameters, ParameterPoint};
use hyperct::numerics::QuadratureSpec;
use hyperct::rootsys::{build, Family, IdentityCase, Multiplicity};
use hyperct::verifier::{default_tolerance, VerifyJob};
use hyperct::Complex;
use serde::Deserialize;

#[derive(Debug, Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct Defaults {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    tol: Option<f64>,
    grid: Option<usize>,
    count: Option<usize>,
    seed: Option<u64>,
    tail_tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Point {
    identity: String,
    family: Option<String>,
    rank: Option<usize>,
    case: Option<String>,
    omega_plus: [f64; 2],
    omega_minus: [f64; 2],
    k_short: Option<[f64; 2]>,
    k_long: Option<[f64; 2]>,
    gamma: Option<[[f64; 2]; 4]>,
    kappa: Option<[f64; 2]>,
    base: Option<Vec<f64>>,
    tol: Option<f64>,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    grid: Option<usize>,
    count: Option<usize>,
    seed: Option<u64>,
    tail_tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    #[serde(default)]
    defaults: Defaults,
    points: Vec<Point>,
}

fn cx(p: [f64; 2]) -> Complex {
    Complex::new(p[0], p[1])
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "A" | "a" => Ok(Family::A),
        "B" | "b" => Ok(Family::B),
        "C" | "c" => Ok(Family::C),
        "D" | "d" => Ok(Family::D),
        "G" | "g" => Ok(Family::G),
        other => Err(format!("unknown family '{other}'")),
    }
}

fn parse_case(s: &str) -> Result<IdentityCase, String> {
    match s {
        "i" | "I" => Ok(IdentityCase::I),
        "ii" | "II" => Ok(IdentityCase::II),
        other => Err(format!("unknown case '{other}'")),
    }
}

/// Parse the sweep JSON text into verification jobs, in file order.
pub fn parse_sweep(text: &str) -> Result<Vec<VerifyJob>, String> {
    let file: SweepFile = serde_json::from_str(text).map_err(|e| format!("bad sweep config: {e}"))?;
    let d = file.defaults.clone();
    let mut jobs = Vec::with_capacity(file.points.len());
    for (i, p) in file.points.iter().enumerate() {
        let label = format!("points[{i}]");
        let spec = QuadratureSpec {
            rel_tol: p.rel_tol.or(d.rel_tol).unwrap_or(1e-9),
            abs_tol: p.abs_tol.or(d.abs_tol).unwrap_or(1e-12),
            ..QuadratureSpec::default()
        };
        let qp = QuasiPeriods::new(cx(p.omega_plus), cx(p.omega_minus))
            .map_err(|e| format!("{label}: {e}"))?;
        let rank = p.rank.unwrap_or(1);
        let grid = p.grid.or(d.grid).unwrap_or(32);
        let count = p.count.or(d.count).unwrap_or(100);
        let seed = p.seed.or(d.seed).unwrap_or(7);
        let tail_tol = p.tail_tol.or(d.tail_tol).unwrap_or(1e-12);
        let mk_pp = || -> Result<ParameterPoint, String> {
            let family = parse_family(p.family.as_deref().unwrap_or("A"))?;
            let case = parse_case(p.case.as_deref().unwrap_or("i"))?;
            let rs = build(family, rank).map_err(|e| format!("{label}: {e}"))?;
            let ks = cx(p.k_short.ok_or_else(|| format!("{label}: k_short required"))?);
            let kl = p.k_long.map(cx).unwrap_or(ks);
            Ok(ParameterPoint::new(qp, rs, case, Multiplicity::new(ks, kl)))
        };
        let job = match p.identity.as_str() {
            "hyperbolic" => VerifyJob::HyperbolicCt {
                pp: mk_pp()?,
                spec,
                tolerance: p.tol.or(d.tol).unwrap_or(default_tolerance(rank)),
            },
            "qct" => VerifyJob::QConstantTerm {
                pp: mk_pp()?,
                grid_m: grid,
                tolerance: p.tol.or(d.tol).unwrap_or(1e-7),
            },
            "qsum" => VerifyJob::QSum {
                pp: mk_pp()?,
                base_lambda: p.base.clone().unwrap_or(vec![0.37; rank]),
                tail_tol,
                tolerance: p.tol.or(d.tol).unwrap_or(1e-7),
            },
            "split" => VerifyJob::Split {
                pp: mk_pp()?,
                count,
                seed,
                spec,
                tolerance: p.tol.or(d.tol).unwrap_or(1e-8),
            },
            "shintani" => VerifyJob::Shintani {
                qp,
                count,
                seed,
                spec,
                tolerance: p.tol.or(d.tol).unwrap_or(1e-10),
            },
            "bc" => {
                let g = p.gamma.ok_or_else(|| format!("{label}: gamma required for bc"))?;
                VerifyJob::Bc {
                    bp: BcParameters::new(
                        qp,
                        [cx(g[0]), cx(g[1]), cx(g[2]), cx(g[3])],
                        p.kappa.map(cx).unwrap_or(Complex::new(0.0, 0.0)),
                        rank,
                    ),
                    spec,
                    tolerance: p.tol.or(d.tol).unwrap_or(default_tolerance(rank)),
                }
            }
            other => return Err(format!("{label}: unknown identity '{other}'")),
        };
        jobs.push(job);
    }
    Ok(jobs)
}
