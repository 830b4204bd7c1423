//! Command-line front end: batch verification of every claim, plus focused
//! subcommands for the individual objects.
//!
//! Exit codes: 0 = everything verified, 1 = a mathematical claim failed,
//! 2 = usage or configuration error.

use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;

use x1curve::actions::{
    diamond_point, fricke_involution_check, fricke_membership, fricke_point_cyclo,
    DiamondElement, FrickeMembership,
};
use x1curve::cusps::{
    cusp_orbit, principal_cusp_rational, tangent_nullity_exact, tangent_nullity_numeric,
    wp_point_equal,
};
use x1curve::cyclotomic::{CyclotomicField, Level};
use x1curve::eisenstein::{all_s, all_t};
use x1curve::error::Error;
use x1curve::export;
use x1curve::hilbert::{
    graded_component_dimension_exact, graded_component_dimension_numeric,
};
use x1curve::linalg::RankTolerance;
use x1curve::ode::{antisymmetry_check, solve_standard, verify_rhat_relations};
use x1curve::quadrics::{determine_kappa, expansion_point, numeric_point, quad_rel_failures};
use x1curve::report::{all_passed, run_all, RunConfig};
use x1curve::ring::{ComplexField64, RationalField};
use x1curve::series::{SeriesRing, Var};

#[derive(Parser)]
#[command(name = "x1curve", version, about = "Exact equations of X1(p) from weight-one Eisenstein series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FrickeCheck {
    Involution,
    Membership,
    Points,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
    Cas,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weight-one and weight-two expansions
    Series {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 30)]
        order: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check that every generator vanishes on the expansions
    VerifyIdeal {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 30)]
        order: i64,
    },
    /// Resolve the sum-of-squares coefficient in the eliminated quadrics
    Kappa {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 30)]
        order: i64,
    },
    /// List the cusp orbit
    Cusps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Fricke-involution checks
    Fricke {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        check: Option<FrickeCheck>,
    },
    /// Solve the flow and verify the degree-two relations on it
    Ode {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        z_order: i64,
        /// solve at the principal cusp (default)
        #[arg(long, conflicts_with_all = ["tau", "q_order_mode"])]
        at_cusp: bool,
        /// numeric point tau, e.g. "i", "2i", "0.1+0.9i"
        #[arg(long)]
        tau: Option<String>,
        /// series mode: coordinates in Q(zeta_p)[[q]]/q^N with this N
        #[arg(long = "q-order", id = "q_order_mode")]
        q_order: Option<i64>,
    },
    /// Hilbert table (n, w, dim) of the graded quotient
    Hilbert {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        /// cusp index into the orbit (default 0 = principal)
        #[arg(long)]
        at: Option<usize>,
        #[arg(long, conflicts_with = "at")]
        tau: Option<String>,
        #[arg(long, default_value_t = 30)]
        q_order: i64,
    },
    /// Tangent-space dimension at cusps or at a numeric point
    Tangent {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        at: Option<usize>,
        #[arg(long, conflicts_with = "at")]
        tau: Option<String>,
        #[arg(long, default_value_t = 30)]
        q_order: i64,
    },
    /// Emit the equations as JSON or a CAS-pasteable script
    Export {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 30)]
        order: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
    },
    /// Run every verification claim
    All {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 30)]
        order: i64,
        #[arg(long, default_value_t = 8)]
        z_order: i64,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    // die quietly when the output pipe closes (e.g. `x1curve cusps | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Ok(threads) = std::env::var("X1CURVE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

/// 0 = verified, 1 = mathematical failure, 2 = usage error.
fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Outcome::Math(msg)) => {
            eprintln!("FAIL: {msg}");
            1
        }
    }
}

enum Outcome {
    Usage(String),
    Math(String),
}

fn level_of(p: u64) -> Result<Level, Outcome> {
    Level::new(p).map_err(|e| Outcome::Usage(e.to_string()))
}

fn parse_tau(s: &str) -> Result<Complex64, Outcome> {
    let t = s.trim().replace(' ', "");
    let parse_part = |x: &str| -> Result<f64, Outcome> {
        if x.is_empty() || x == "+" {
            Ok(1.0)
        } else if x == "-" {
            Ok(-1.0)
        } else {
            x.parse::<f64>()
                .map_err(|_| Outcome::Usage(format!("cannot parse '{s}' as a complex number")))
        }
    };
    let tau = if let Some(im_part) = t.strip_suffix('i') {
        // split a trailing imaginary part from an optional real part
        let split = im_part
            .rfind(['+', '-'])
            .filter(|&idx| idx > 0 && !matches!(im_part.as_bytes()[idx - 1], b'e' | b'E'));
        match split {
            Some(idx) => Complex64::new(
                parse_part(&im_part[..idx])?,
                parse_part(&im_part[idx..])?,
            ),
            None => Complex64::new(0.0, parse_part(im_part)?),
        }
    } else {
        Complex64::new(parse_part(&t)?, 0.0)
    };
    if tau.im <= 0.0 {
        return Err(Outcome::Usage(format!(
            "tau = {tau} must lie in the upper half plane"
        )));
    }
    Ok(tau)
}

fn math_err(e: Error) -> Outcome {
    Outcome::Math(e.to_string())
}

fn dispatch(cli: Cli) -> Result<bool, Outcome> {
    match cli.command {
        Command::Series { p, order, json } => {
            let level = level_of(p)?;
            if order < 1 {
                return Err(Outcome::Usage("order must be at least 1".into()));
            }
            let s = all_s(level, order).map_err(math_err)?;
            let t = all_t(level, order).map_err(math_err)?;
            if json {
                let doc = serde_json::json!({
                    "p": p,
                    "order": order,
                    "s": s.iter().map(|e| &e.series).collect::<Vec<_>>(),
                    "t": t.iter().map(|e| &e.series).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                for e in s.iter().chain(t.iter()) {
                    let name = if e.weight == 1 { "s" } else { "t" };
                    let coeffs: Vec<String> = e
                        .series
                        .stored()
                        .map(|(d, c)| format!("q^{d}: {c}"))
                        .collect();
                    println!("{name}_{}  [{}]", e.a, coeffs.join(", "));
                }
            }
            Ok(true)
        }

        Command::VerifyIdeal { p, order } => {
            let level = level_of(p)?;
            let failures = quad_rel_failures(level, order).map_err(math_err)?;
            if failures.is_empty() {
                println!(
                    "all {} generators vanish on the expansions through q^{}",
                    x1curve::quadrics::canonical_triples(level).len(),
                    order - 1
                );
                Ok(true)
            } else {
                println!("failing triples: {failures:?}");
                Ok(false)
            }
        }

        Command::Kappa { p, order } => {
            let level = level_of(p)?;
            let data = determine_kappa(level, order).map_err(math_err)?;
            println!(
                "kappa = {} (sum-of-squares coefficient kappa/(p-2) = {}/{})",
                data.kappa,
                data.kappa,
                level.p() - 2
            );
            Ok(true)
        }

        Command::Cusps { p, json } => {
            let level = level_of(p)?;
            let orbit = cusp_orbit(level).map_err(math_err)?;
            if json {
                let doc: Vec<_> = orbit
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "provenance": format!("{:?}", c.provenance),
                            "s": c.point.s,
                            "t": c.point.t,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                println!("{} cusps:", orbit.len());
                for c in &orbit {
                    println!("  {:?}", c.provenance);
                    for (i, v) in c.point.s.iter().enumerate() {
                        println!("    s{} = {}", i + 1, v);
                    }
                    for (i, v) in c.point.t.iter().enumerate() {
                        println!("    t{} = {}", i + 1, v);
                    }
                }
            }
            Ok(true)
        }

        Command::Fricke { p, check } => {
            let level = level_of(p)?;
            let mut ok = true;
            let want = |c: FrickeCheck| {
                check.map_or(true, |chosen| {
                    std::mem::discriminant(&chosen) == std::mem::discriminant(&c)
                })
            };
            if want(FrickeCheck::Involution) {
                let passed = fricke_involution_check(level).map_err(math_err)?;
                println!("involution identity: {}", if passed { "PASS" } else { "FAIL" });
                ok &= passed;
            }
            if want(FrickeCheck::Membership) {
                let reports = fricke_membership(level).map_err(math_err)?;
                let passed = reports.iter().all(FrickeMembership::is_member);
                println!(
                    "generator-family membership: {} ({} generators)",
                    if passed { "PASS" } else { "FAIL" },
                    reports.len()
                );
                ok &= passed;
            }
            if want(FrickeCheck::Points) {
                let f = CyclotomicField::new(level);
                let orbit = cusp_orbit(level).map_err(math_err)?;
                let mut passed = true;
                for c in &orbit {
                    let once = fricke_point_cyclo(&c.point).map_err(math_err)?;
                    let twice = fricke_point_cyclo(&once).map_err(math_err)?;
                    passed &= wp_point_equal(&f, &c.point, &twice);
                    // w_p <k> = <k^-1> w_p, spot-checked at k = 2
                    let k = DiamondElement::new(level, 2).map_err(math_err)?;
                    let kinv =
                        DiamondElement::new(level, level.inv_mod(2).map_err(math_err)?)
                            .map_err(math_err)?;
                    let lhs = fricke_point_cyclo(&diamond_point(&f, k, &c.point))
                        .map_err(math_err)?;
                    let rhs = diamond_point(&f, kinv, &once);
                    passed &= wp_point_equal(&f, &lhs, &rhs);
                }
                println!(
                    "point action (involution + diamond twist): {}",
                    if passed { "PASS" } else { "FAIL" }
                );
                ok &= passed;
            }
            Ok(ok)
        }

        Command::Ode {
            p,
            z_order,
            at_cusp: _,
            tau,
            q_order,
        } => {
            let level = level_of(p)?;
            if z_order < 2 {
                return Err(Outcome::Usage("z-order must be at least 2".into()));
            }
            if let Some(tau) = tau {
                let tau = parse_tau(&tau)?;
                let ring = ComplexField64::default();
                let point = numeric_point(level, 30, tau).map_err(math_err)?;
                let sol = solve_standard(&ring, &point, z_order).map_err(math_err)?;
                let through = verify_rhat_relations(&ring, &point, &sol).map_err(math_err)?;
                let anti = antisymmetry_check(&ring, &sol);
                println!(
                    "numeric point at tau = {tau}: relations vanish through z^{through}, antisymmetry {}",
                    if anti { "PASS" } else { "FAIL" }
                );
                Ok(anti)
            } else if let Some(n) = q_order {
                let base = CyclotomicField::new(level);
                let ring = SeriesRing::new(base, Var::Q, n);
                let point = expansion_point(level, n).map_err(math_err)?;
                let sol = solve_standard(&ring, &point, z_order).map_err(math_err)?;
                let through = verify_rhat_relations(&ring, &point, &sol).map_err(math_err)?;
                let anti = antisymmetry_check(&ring, &sol);
                println!(
                    "series point over Q(zeta_{p})[[q]]/q^{n}: relations vanish through z^{through}, antisymmetry {}",
                    if anti { "PASS" } else { "FAIL" }
                );
                Ok(anti)
            } else {
                let f = RationalField;
                let cusp = principal_cusp_rational(level).map_err(math_err)?;
                let sol = solve_standard(&f, &cusp, z_order).map_err(math_err)?;
                let through = verify_rhat_relations(&f, &cusp, &sol).map_err(math_err)?;
                let anti = antisymmetry_check(&f, &sol);
                println!("standard solution at the principal cusp (orders -1..{z_order}):");
                for a in level.units().take(3) {
                    let row: Vec<String> = (-1..=z_order.min(3))
                        .map(|n| format!("{}", sol.coeff(a, n)))
                        .collect();
                    println!("  r_{a}: {}", row.join(", "));
                }
                println!(
                    "relations vanish through z^{through}; antisymmetry {}",
                    if anti { "PASS" } else { "FAIL" }
                );
                Ok(anti)
            }
        }

        Command::Hilbert {
            p,
            max_degree,
            at,
            tau,
            q_order,
        } => {
            let level = level_of(p)?;
            if max_degree < 1 {
                return Err(Outcome::Usage("max degree must be at least 1".into()));
            }
            println!("{:>3} {:>3} {:>5}", "n", "w", "dim");
            let mut ok = true;
            if let Some(tau) = tau {
                let tau = parse_tau(&tau)?;
                let point = numeric_point(level, q_order, tau).map_err(math_err)?;
                let tol = RankTolerance::default();
                for n in 1..=max_degree {
                    let mut total = 0;
                    for w in 0..level.p() {
                        let dim = graded_component_dimension_numeric(&point, n, w, &tol)
                            .map_err(math_err)?;
                        println!("{n:>3} {w:>3} {dim:>5}");
                        total += dim;
                    }
                    println!("{n:>3} all {total:>5}  (expected {})", n * level.p());
                    ok &= total as i64 == n * level.p();
                }
            } else {
                let orbit = cusp_orbit(level).map_err(math_err)?;
                let idx = at.unwrap_or(0);
                let cusp = orbit
                    .get(idx)
                    .ok_or_else(|| {
                        Outcome::Usage(format!("cusp index {idx} out of range 0..{}", orbit.len()))
                    })?;
                let f = CyclotomicField::new(level);
                for n in 1..=max_degree {
                    let mut total = 0;
                    for w in 0..level.p() {
                        let dim = graded_component_dimension_exact(&f, &cusp.point, n, w);
                        println!("{n:>3} {w:>3} {dim:>5}");
                        total += dim;
                    }
                    println!("{n:>3} all {total:>5}  (expected {})", n * level.p());
                    ok &= total as i64 == n * level.p();
                }
            }
            Ok(ok)
        }

        Command::Tangent { p, at, tau, q_order } => {
            let level = level_of(p)?;
            if let Some(tau) = tau {
                let tau = parse_tau(&tau)?;
                let point = numeric_point(level, q_order, tau).map_err(math_err)?;
                let nullity = tangent_nullity_numeric(&point, &RankTolerance::default())
                    .map_err(math_err)?;
                println!("affine-cone tangent dimension at tau = {tau}: {nullity}");
                Ok(nullity == 2)
            } else {
                let orbit = cusp_orbit(level).map_err(math_err)?;
                let f = CyclotomicField::new(level);
                let mut ok = true;
                match at {
                    Some(idx) => {
                        let cusp = orbit.get(idx).ok_or_else(|| {
                            Outcome::Usage(format!(
                                "cusp index {idx} out of range 0..{}",
                                orbit.len()
                            ))
                        })?;
                        let nullity = tangent_nullity_exact(&f, &cusp.point);
                        println!("cusp {idx} ({:?}): nullity {nullity}", cusp.provenance);
                        ok = nullity == 2;
                    }
                    None => {
                        for (idx, cusp) in orbit.iter().enumerate() {
                            let nullity = tangent_nullity_exact(&f, &cusp.point);
                            println!("cusp {idx} ({:?}): nullity {nullity}", cusp.provenance);
                            ok &= nullity == 2;
                        }
                    }
                }
                Ok(ok)
            }
        }

        Command::Export { p, order, format } => {
            let level = level_of(p)?;
            let doc = export::build_document(level, order).map_err(math_err)?;
            match format {
                ExportFormat::Json => {
                    println!("{}", export::to_json(&doc).map_err(math_err)?)
                }
                ExportFormat::Cas => {
                    print!("{}", export::to_cas_script(&doc).map_err(math_err)?)
                }
            }
            Ok(true)
        }

        Command::All {
            p,
            order,
            z_order,
            max_degree,
            seed,
            json,
        } => {
            let level = level_of(p)?;
            if order < 10 || z_order < 3 || max_degree < 1 {
                return Err(Outcome::Usage(
                    "need order >= 10, z-order >= 3, max-degree >= 1".into(),
                ));
            }
            let mut cfg = RunConfig::new(level);
            cfg.q_order = order;
            cfg.z_order = z_order;
            cfg.max_degree = max_degree;
            cfg.seed = seed;
            let reports = run_all(&cfg);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("serializable")
                );
            } else {
                for r in &reports {
                    let status = if r.passed { "PASS" } else { "FAIL" };
                    match &r.witness {
                        Some(w) => println!("{status} {:<24} {:>6} ms  {w}", r.claim, r.millis),
                        None => println!("{status} {:<24} {:>6} ms", r.claim, r.millis),
                    }
                }
                let passed = reports.iter().filter(|r| r.passed).count();
                println!("{passed}/{} claims verified", reports.len());
            }
            Ok(all_passed(&reports))
        }
    }
}
