//! Argument parsing and run orchestration.
//!
//! Exit codes: 0 all verifications passed, 1 numeric failure, 2 invalid
//! parameters or usage, 3 I/O error.

use crate::report;
use crate::selftest;
use crate::sweep as sweepcfg;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperct::hypergamma::{gamma, QuasiPeriods};
use hyperct::identities::{BcParameters, ParameterPoint};
use hyperct::numerics::QuadratureSpec;
use hyperct::rootsys::{build, Family, IdentityCase, Multiplicity};
use hyperct::verifier::{
    self, default_tolerance, verify_bc, verify_hyperbolic_ct, verify_q_constant_term,
    verify_q_sum, verify_shintani, verify_split, VerificationReport,
};
use hyperct::Complex;
use std::path::PathBuf;

/// Parse "RE,IM" (no spaces) into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM but got '{s}'"))?;
    let re: f64 = re.parse().map_err(|_| format!("bad real part '{re}'"))?;
    let im: f64 = im.parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("complex literal '{s}' must be finite"));
    }
    Ok(Complex::new(re, im))
}

fn fmt_complex(z: Complex) -> String {
    format!("{},{}", z.re, z.im)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    A,
    B,
    C,
    D,
    G,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
            FamilyArg::C => Family::C,
            FamilyArg::D => Family::D,
            FamilyArg::G => Family::G,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    I,
    Ii,
}

impl From<CaseArg> for IdentityCase {
    fn from(c: CaseArg) -> IdentityCase {
        match c {
            CaseArg::I => IdentityCase::I,
            CaseArg::Ii => IdentityCase::II,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    Hyperbolic,
    Qct,
    Qsum,
    Split,
    Shintani,
    Bc,
}

#[derive(Parser, Debug)]
#[command(
    name = "hyperct",
    about = "Evaluate the hyperbolic gamma function and verify generalized constant-term identities",
    disable_help_subcommand = true
)]
struct CliArgs {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// Evaluate G(omega_plus, omega_minus; z)
    Gamma(GammaArgs),
    /// Verify one identity at one parameter point
    Verify(VerifyArgs),
    /// Run the verifications listed in a JSON config file
    Sweep(SweepArgs),
    /// Run the built-in invariant suite
    Selftest,
}

#[derive(Args, Debug)]
struct GammaArgs {
    /// First quasi-period as RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    omega_plus: Complex,
    /// Second quasi-period as RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    omega_minus: Complex,
    /// Argument as RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Which identity to verify
    #[arg(value_enum)]
    identity: IdentityArg,
    #[arg(long, value_enum, default_value = "a")]
    family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    #[arg(long, value_enum, default_value = "i")]
    case: CaseArg,
    #[arg(long, value_parser = parse_complex, default_value = "1,0", allow_hyphen_values = true)]
    omega_plus: Complex,
    #[arg(long, value_parser = parse_complex, default_value = "1,0", allow_hyphen_values = true)]
    omega_minus: Complex,
    /// Multiplicity on the short-root orbit (RE,IM)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    k: Option<Complex>,
    /// Multiplicity on the long-root orbit; defaults to --k
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    k_long: Option<Complex>,
    /// BC parameters gamma_1..gamma_4 (RE,IM)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma1: Option<Complex>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma2: Option<Complex>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma3: Option<Complex>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma4: Option<Complex>,
    /// BC long-root coupling (RE,IM); ignored at rank 1
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    kappa: Option<Complex>,
    /// Identity tolerance; defaults by rank
    #[arg(long)]
    tol: Option<f64>,
    /// Quadrature relative tolerance
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Quadrature absolute tolerance
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    /// Trapezoid grid per axis (qct)
    #[arg(long, default_value_t = 32)]
    grid: usize,
    /// Sample count (split / shintani)
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// RNG seed (split / shintani)
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Lattice tail tolerance (qsum)
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    /// Base point in lambda-coordinates, comma-separated (qsum)
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    /// Write a JSON report
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// JSON sweep description
    #[arg(long)]
    config: PathBuf,
    /// Write a JSON report
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A fully validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum RunConfig {
    Gamma {
        omega_plus: Complex,
        omega_minus: Complex,
        z: Complex,
    },
    Verify {
        identity: IdentityArg,
        family: Family,
        rank: usize,
        case: IdentityCase,
        omega_plus: Complex,
        omega_minus: Complex,
        k_short: Complex,
        k_long: Complex,
        gamma: [Complex; 4],
        kappa: Complex,
        tol: Option<f64>,
        rel_tol: f64,
        abs_tol: f64,
        grid: usize,
        count: usize,
        seed: u64,
        tail_tol: f64,
        base: Vec<f64>,
        out: Option<PathBuf>,
    },
    Sweep {
        config: PathBuf,
        out: Option<PathBuf>,
    },
    Selftest,
}

/// Parse argv into a validated [`RunConfig`]; `Err` carries the one-line
/// reason and maps to exit code 2.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = CliArgs::try_parse_from(argv).map_err(|e| {
        let rendered = e.render().to_string();
        rendered.lines().next().unwrap_or("invalid arguments").to_string()
    })?;
    match cli.command {
        CommandArgs::Gamma(g) => Ok(RunConfig::Gamma {
            omega_plus: g.omega_plus,
            omega_minus: g.omega_minus,
            z: g.z,
        }),
        CommandArgs::Selftest => Ok(RunConfig::Selftest),
        CommandArgs::Sweep(s) => Ok(RunConfig::Sweep {
            config: s.config,
            out: s.out,
        }),
        CommandArgs::Verify(v) => {
            let identity = v.identity;
            if identity == IdentityArg::Bc && v.rank > 2 {
                return Err("rank > 2 unsupported for deterministic bc".into());
            }
            if v.rank == 0 {
                return Err("rank must be positive".into());
            }
            let k_short = v.k.unwrap_or(Complex::new(0.0, 0.0));
            let k_long = v.k_long.or(v.k).unwrap_or(Complex::new(0.0, 0.0));
            let needs_k = matches!(
                identity,
                IdentityArg::Hyperbolic | IdentityArg::Qct | IdentityArg::Qsum | IdentityArg::Split
            );
            if needs_k && v.k.is_none() {
                return Err("--k RE,IM is required for this identity".into());
            }
            let gamma_defaults = Complex::new(-0.25, 0.0);
            let gamma = [
                v.gamma1.unwrap_or(gamma_defaults),
                v.gamma2.unwrap_or(gamma_defaults),
                v.gamma3.unwrap_or(gamma_defaults),
                v.gamma4.unwrap_or(gamma_defaults),
            ];
            if identity == IdentityArg::Bc
                && (v.gamma1.is_none() || v.gamma2.is_none() || v.gamma3.is_none() || v.gamma4.is_none())
            {
                return Err("--gamma1..--gamma4 are required for bc".into());
            }
            let kappa = v.kappa.unwrap_or(Complex::new(0.0, 0.0));
            if identity == IdentityArg::Bc && v.rank >= 2 && v.kappa.is_none() {
                return Err("--kappa RE,IM is required for bc with rank >= 2".into());
            }
            let base = match &v.base {
                None => vec![0.37; v.rank],
                Some(s) => {
                    let parts: Result<Vec<f64>, _> = s.split(',').map(str::parse).collect();
                    let parts = parts.map_err(|_| format!("bad --base '{s}'"))?;
                    if parts.len() != v.rank {
                        return Err(format!(
                            "--base needs {} coordinates, got {}",
                            v.rank,
                            parts.len()
                        ));
                    }
                    parts
                }
            };
            Ok(RunConfig::Verify {
                identity,
                family: v.family.into(),
                rank: v.rank,
                case: v.case.into(),
                omega_plus: v.omega_plus,
                omega_minus: v.omega_minus,
                k_short,
                k_long,
                gamma,
                kappa,
                tol: v.tol,
                rel_tol: v.rel_tol,
                abs_tol: v.abs_tol,
                grid: v.grid,
                count: v.count,
                seed: v.seed,
                tail_tol: v.tail_tol,
                base,
                out: v.out,
            })
        }
    }
}

/// Render a config back to argv form; `parse_args(render(c)) == c`.
pub fn render(config: &RunConfig) -> Vec<String> {
    let mut out = vec!["hyperct".to_string()];
    match config {
        RunConfig::Gamma {
            omega_plus,
            omega_minus,
            z,
        } => {
            out.extend([
                "gamma".into(),
                "--omega-plus".into(),
                fmt_complex(*omega_plus),
                "--omega-minus".into(),
                fmt_complex(*omega_minus),
                "--z".into(),
                fmt_complex(*z),
            ]);
        }
        RunConfig::Selftest => out.push("selftest".into()),
        RunConfig::Sweep { config, out: o } => {
            out.extend(["sweep".into(), "--config".into(), config.display().to_string()]);
            if let Some(p) = o {
                out.extend(["--out".into(), p.display().to_string()]);
            }
        }
        RunConfig::Verify {
            identity,
            family,
            rank,
            case,
            omega_plus,
            omega_minus,
            k_short,
            k_long,
            gamma,
            kappa,
            tol,
            rel_tol,
            abs_tol,
            grid,
            count,
            seed,
            tail_tol,
            base,
            out: o,
        } => {
            let id = match identity {
                IdentityArg::Hyperbolic => "hyperbolic",
                IdentityArg::Qct => "qct",
                IdentityArg::Qsum => "qsum",
                IdentityArg::Split => "split",
                IdentityArg::Shintani => "shintani",
                IdentityArg::Bc => "bc",
            };
            let fam = match family {
                Family::A => "a",
                Family::B => "b",
                Family::C => "c",
                Family::D => "d",
                Family::G => "g",
            };
            let case_s = match case {
                IdentityCase::I => "i",
                IdentityCase::II => "ii",
            };
            out.extend(["verify".into(), id.into()]);
            out.extend(["--family".into(), fam.into()]);
            out.extend(["--rank".into(), rank.to_string()]);
            out.extend(["--case".into(), case_s.into()]);
            out.extend(["--omega-plus".into(), fmt_complex(*omega_plus)]);
            out.extend(["--omega-minus".into(), fmt_complex(*omega_minus)]);
            out.extend(["--k".into(), fmt_complex(*k_short)]);
            out.extend(["--k-long".into(), fmt_complex(*k_long)]);
            out.extend(["--gamma1".into(), fmt_complex(gamma[0])]);
            out.extend(["--gamma2".into(), fmt_complex(gamma[1])]);
            out.extend(["--gamma3".into(), fmt_complex(gamma[2])]);
            out.extend(["--gamma4".into(), fmt_complex(gamma[3])]);
            out.extend(["--kappa".into(), fmt_complex(*kappa)]);
            if let Some(t) = tol {
                out.extend(["--tol".into(), t.to_string()]);
            }
            out.extend(["--rel-tol".into(), rel_tol.to_string()]);
            out.extend(["--abs-tol".into(), abs_tol.to_string()]);
            out.extend(["--grid".into(), grid.to_string()]);
            out.extend(["--count".into(), count.to_string()]);
            out.extend(["--seed".into(), seed.to_string()]);
            out.extend(["--tail-tol".into(), tail_tol.to_string()]);
            let base_s: Vec<String> = base.iter().map(|b| b.to_string()).collect();
            out.extend(["--base".into(), base_s.join(",")]);
            if let Some(p) = o {
                out.extend(["--out".into(), p.display().to_string()]);
            }
        }
    }
    out
}

fn print_report(r: &VerificationReport) {
    match &r.error {
        Some(e) => println!("{}: ERROR {} [{}]", r.identity_name, e, r.parameters),
        None => println!(
            "{}: {} lhs={:.12e}{:+.12e}i rhs={:.12e}{:+.12e}i rel_err={:.3e} tol={:.1e} ({:.0} ms)",
            r.identity_name,
            if r.passed { "PASS" } else { "FAIL" },
            r.lhs.re,
            r.lhs.im,
            r.rhs.re,
            r.rhs.im,
            r.rel_err,
            r.tolerance,
            r.wall_ms
        ),
    }
}

fn exit_code_for(reports: &[VerificationReport]) -> i32 {
    let invalid = reports.iter().any(|r| {
        r.error
            .as_deref()
            .map(|e| e.starts_with("NotInS") || e.starts_with("NotInSPrime") || e.starts_with("NotInSBC"))
            .unwrap_or(false)
    });
    if invalid {
        return 2;
    }
    if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    }
}

/// Execute a parsed configuration; returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    match config {
        RunConfig::Gamma {
            omega_plus,
            omega_minus,
            z,
        } => {
            let qp = match QuasiPeriods::new(*omega_plus, *omega_minus) {
                Ok(qp) => qp,
                Err(e) => {
                    eprintln!("{e}");
                    return 2;
                }
            };
            let spec = QuadratureSpec {
                rel_tol: 1e-11,
                abs_tol: 1e-14,
                ..QuadratureSpec::default()
            };
            match gamma(&qp, *z, &spec) {
                Ok(g) => {
                    let im = g.value.im;
                    if im >= 0.0 {
                        println!("G = {:.12} + {:.12}i", g.value.re, im);
                    } else {
                        println!("G = {:.12} - {:.12}i", g.value.re, -im);
                    }
                    0
                }
                Err(e) => {
                    eprintln!("{e}");
                    1
                }
            }
        }
        RunConfig::Selftest => selftest::run_selftest(),
        RunConfig::Sweep { config, out } => {
            let text = match std::fs::read_to_string(config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", config.display());
                    return 3;
                }
            };
            let jobs = match sweepcfg::parse_sweep(&text) {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("{e}");
                    return 2;
                }
            };
            let reports = verifier::sweep(&jobs);
            for r in &reports {
                print_report(r);
            }
            if let Some(path) = out {
                if let Err(e) = report::emit_report(&reports, path) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return 3;
                }
            }
            exit_code_for(&reports)
        }
        RunConfig::Verify {
            identity,
            family,
            rank,
            case,
            omega_plus,
            omega_minus,
            k_short,
            k_long,
            gamma: gamma4,
            kappa,
            tol,
            rel_tol,
            abs_tol,
            grid,
            count,
            seed,
            tail_tol,
            base,
            out,
        } => {
            let spec = QuadratureSpec {
                rel_tol: *rel_tol,
                abs_tol: *abs_tol,
                ..QuadratureSpec::default()
            };
            let qp = match QuasiPeriods::new(*omega_plus, *omega_minus) {
                Ok(qp) => qp,
                Err(e) => {
                    eprintln!("{e}");
                    return 2;
                }
            };
            let tolerance = tol.unwrap_or(default_tolerance(*rank));
            let report_one = match identity {
                IdentityArg::Shintani => verify_shintani(&qp, *count, *seed, &spec, tol.unwrap_or(1e-10)),
                IdentityArg::Bc => {
                    let bp = BcParameters::new(qp, *gamma4, *kappa, *rank);
                    verify_bc(&bp, &spec, tolerance)
                }
                _ => {
                    let rs = match build(*family, *rank) {
                        Ok(rs) => rs,
                        Err(e) => {
                            eprintln!("{e}");
                            return 2;
                        }
                    };
                    let pp = ParameterPoint::new(
                        qp,
                        rs,
                        *case,
                        Multiplicity::new(*k_short, *k_long),
                    );
                    match identity {
                        IdentityArg::Hyperbolic => verify_hyperbolic_ct(&pp, &spec, tolerance),
                        IdentityArg::Qct => verify_q_constant_term(&pp, *grid, tol.unwrap_or(1e-7)),
                        IdentityArg::Qsum => {
                            verify_q_sum(&pp, base, *tail_tol, tol.unwrap_or(1e-7))
                        }
                        IdentityArg::Split => {
                            verify_split(&pp, *count, *seed, &spec, tol.unwrap_or(1e-8))
                        }
                        _ => unreachable!(),
                    }
                }
            };
            print_report(&report_one);
            let reports = vec![report_one];
            if let Some(path) = out {
                if let Err(e) = report::emit_report(&reports, path) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return 3;
                }
            }
            exit_code_for(&reports)
        }
    }
}
