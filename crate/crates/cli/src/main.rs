//! Command-line front end: JSON report emission for the library modules.
//!
//! Every subcommand prints a single deterministic JSON document (sorted
//! keys, no timestamps) to stdout or `--out`. Exit codes: 0 on success,
//! 1 on a domain error (bad arguments, malformed input), 2 on a
//! verification failure (an identity check that does not hold).

use clap::{Args, Parser, Subcommand};
use gl3padic::branching;
use gl3padic::characters::DirichletCharacter;
use gl3padic::eisenstein;
use gl3padic::exact_arith::{CycNumber, QuadRat, Rat, SymbolicPeriod};
use gl3padic::gl3_local::{
    self, critical_set, e_infty, e_p, CriticalSide, LocalRepGL3, RefinedData,
};
use gl3padic::characters::unit_group_generators;
use gl3padic::iwasawa::{measure_from_json, MeasureJson};
use gl3padic::symsq::{
    algebraicity_check_at_digits, delta_form, interpolation_rhs, lift_satake,
    petersson_via_edge, refinement_value, Algebraicity, ModFormData,
};
use gl3padic::zeta_local::{
    specialization_point, y_bruteforce, y_closed_form, ZetaInput, ZetaValue,
};
use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;

const SCHEMA_VERSION: u32 = 1;

/// Exit-code-bearing error: 1 = domain error, 2 = verification failure.
enum CliError {
    Domain(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Verification(m) => m,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "gl3padic",
    about = "Exact and numeric tools for symmetric-square p-adic interpolation data",
    version
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct EtaArgs {
    /// Modulus of the twist character η (1 = trivial).
    #[arg(long, default_value_t = 1)]
    eta_modulus: u64,
    /// Root-of-unity exponents of η on the fixed generators of
    /// (Z/modulus)^×, comma-separated; defaults to the trivial character.
    #[arg(long, value_delimiter = ',')]
    eta_exponents: Option<Vec<u64>>,
}

impl EtaArgs {
    fn build(&self) -> Result<DirichletCharacter, CliError> {
        if self.eta_modulus == 0 {
            return Err(CliError::Domain("eta-modulus must be positive".into()));
        }
        match &self.eta_exponents {
            None => Ok(DirichletCharacter::trivial(self.eta_modulus)),
            Some(e) => {
                let gens = unit_group_generators(self.eta_modulus);
                if gens.len() != e.len() {
                    return Err(CliError::Domain(format!(
                        "eta-exponents: expected {} entries (one per generator \
                         of (Z/{})^×), got {}",
                        gens.len(),
                        self.eta_modulus,
                        e.len()
                    )));
                }
                Ok(DirichletCharacter::from_exponents(self.eta_modulus, e))
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the critical points for a weight and twist.
    Crit {
        /// Dominant weight parameter a ≥ 0.
        #[arg(long)]
        a: i64,
        /// Parity of the central character at −1.
        #[arg(long, value_parser = ["even", "odd"])]
        omega_parity: String,
        #[command(flatten)]
        eta: EtaArgs,
    },
    /// Satake lift and ordinarity data of the symmetric square at p.
    Refine {
        #[arg(long)]
        p: u64,
        /// Hecke-coefficient fixture (JSON); defaults to the built-in Δ.
        #[arg(long)]
        coeffs: Option<PathBuf>,
    },
    /// Modified local Euler factor e_p at a critical point.
    Ep {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: i64,
        #[command(flatten)]
        eta: EtaArgs,
    },
    /// Archimedean factor e_∞(a, j), exact symbolic form.
    Einf {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        j: i64,
    },
    /// Parahoric zeta value from an input JSON on stdin or --input.
    Zeta {
        /// "closed" for the residue closed form, "sum" for the brute-force
        /// lattice sum.
        #[arg(long, value_parser = ["closed", "sum"])]
        form: String,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Finite-level branching decomposition for GL₃ ⊇ H of weight a.
    Branch {
        #[arg(long)]
        a: u32,
    },
    /// Eisenstein Schwartz-data checks.
    Eis {
        #[command(subcommand)]
        action: EisAction,
    },
    /// Evaluate a measure fixture against a twist character.
    Measure {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        eta: EtaArgs,
        /// Apply the j-th moment twist before evaluating.
        #[arg(long, default_value_t = 0)]
        moment: u32,
    },
    /// Full symmetric-square interpolation report at (p, −j).
    Symsq {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: i64,
        #[command(flatten)]
        eta: EtaArgs,
        /// Target decimal digits; default from GL3PADIC_DIGITS or 30.
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Run the cross-module invariant suite.
    Selftest,
}

#[derive(Subcommand)]
enum EisAction {
    /// Verify the distribution property of the tower Schwartz functions.
    CheckDistribution {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u32,
    },
}

fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cyc_json(c: &CycNumber) -> Value {
    json!({
        "conductor": c.conductor(),
        "coeffs": c.coeffs().iter().map(rat_str).collect::<Vec<_>>(),
    })
}

fn quad_json(q: &QuadRat) -> Value {
    serde_json::to_value(q).expect("QuadRat serializes")
}

fn period_json(p: &SymbolicPeriod) -> Value {
    json!({
        "rational_part": rat_str(&p.rational_part),
        "power_of_2pi_i": p.power_of_2pi_i,
        "gamma_arg": p.gamma_arg,
    })
}

fn laurent_json(v: &ZetaValue) -> Value {
    let terms = |p: &gl3padic::exact_arith::LaurentPoly<QuadRat>| {
        p.terms
            .iter()
            .map(|(&(e1, e2), c)| json!({"e1": e1, "e2": e2, "coeff": quad_json(c)}))
            .collect::<Vec<_>>()
    };
    json!({
        "gauss": cyc_json(&v.gauss),
        "numerator": terms(&v.value.num),
        "denominator": terms(&v.value.den),
    })
}

/// Hecke-coefficient fixture: weight/level plus exact coefficient strings.
#[derive(Deserialize)]
struct CoeffFixture {
    weight: i64,
    level: u64,
    coeffs: Vec<String>,
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let mut it = s.splitn(2, '/');
    let num: BigInt = it
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|e| CliError::Domain(format!("bad rational '{s}': {e}")))?;
    let den: BigInt = match it.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|e| CliError::Domain(format!("bad rational '{s}': {e}")))?,
        None => BigInt::one(),
    };
    Ok(Rat::new(num, den))
}

fn load_form(coeffs: &Option<PathBuf>, min_coeffs: usize) -> Result<ModFormData, CliError> {
    match coeffs {
        None => Ok(delta_form(min_coeffs)),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(domain)?;
            let fx: CoeffFixture = serde_json::from_str(&text)
                .map_err(|e| CliError::Domain(format!("malformed fixture: {e}")))?;
            let coeffs = fx
                .coeffs
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ModFormData {
                weight: fx.weight,
                level: fx.level,
                nebentype: DirichletCharacter::trivial(1),
                hecke_coeffs: coeffs,
                petersson_norm: None,
                theta_twist: DirichletCharacter::trivial(1),
            })
        }
    }
}

/// Zeta-input document for the `zeta` subcommand.
#[derive(Deserialize)]
struct ZetaCliInput {
    prime: u64,
    weight_a: i64,
    alpha: QuadRat,
    r: u32,
    d1: QuadRat,
    d2: QuadRat,
    /// Generator-exponent description of η₁ (modulus, exponents).
    eta1_modulus: u64,
    #[serde(default)]
    eta1_exponents: Vec<u64>,
    eta2_modulus: u64,
    #[serde(default)]
    eta2_exponents: Vec<u64>,
    /// Required for the closed form only.
    rep: Option<LocalRepGL3>,
    omega_eta2_p: Option<QuadRat>,
}

fn character_from(modulus: u64, exponents: &[u64]) -> Result<DirichletCharacter, CliError> {
    if exponents.is_empty() {
        return Ok(DirichletCharacter::trivial(modulus));
    }
    let gens = unit_group_generators(modulus);
    if gens.len() != exponents.len() {
        return Err(CliError::Domain(format!(
            "character exponents: expected {} entries for modulus {modulus}, got {}",
            gens.len(),
            exponents.len()
        )));
    }
    Ok(DirichletCharacter::from_exponents(modulus, exponents))
}

fn default_digits(cli: Option<u32>) -> u32 {
    cli.or_else(|| {
        std::env::var("GL3PADIC_DIGITS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(30)
}

fn run(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Crit { a, omega_parity, eta } => {
            if *a < 0 {
                return Err(CliError::Domain("a must be nonnegative".into()));
            }
            let parity = if omega_parity == "even" { 1 } else { -1 };
            let chi = eta.build()?;
            let minus = critical_set(*a, parity, &chi, CriticalSide::Minus);
            let plus = critical_set(*a, parity, &chi, CriticalSide::Plus);
            Ok(json!({
                "schema": format!("gl3padic/crit/{SCHEMA_VERSION}"),
                "a": a,
                "omega_parity": omega_parity,
                "eta_conductor": chi.conductor(),
                "minus": minus,
                "plus": plus,
            }))
        }
        Command::Refine { p, coeffs } => {
            let need = ((*p as usize) + 1).max(64);
            let f = load_form(coeffs, need)?;
            let s = lift_satake(&f, *p).map_err(CliError::Domain)?;
            let alpha_ref = refinement_value(&f, *p).map_err(CliError::Domain)?;
            Ok(json!({
                "schema": format!("gl3padic/refine/{SCHEMA_VERSION}"),
                "prime": p,
                "weight_a": s.weight_a,
                "satake": {
                    "alpha": quad_json(&s.alpha),
                    "beta": quad_json(&s.beta),
                    "gamma": quad_json(&s.gamma),
                },
                "valuations": s.valuations,
                "cohomologically_normalized": s.is_cohomologically_normalized(),
                "ordinary_p1": gl3_local::is_ordinary_satake(&s, 1),
                "refinement_value": quad_json(&alpha_ref),
            }))
        }
        Command::Ep { p, j, eta } => {
            let f = delta_form(((*p as usize) + 1).max(64));
            let chi = eta.build()?;
            let alpha_ref = refinement_value(&f, *p).map_err(CliError::Domain)?;
            let v = e_p(*p, &alpha_ref, &chi, *j).map_err(CliError::Domain)?;
            Ok(json!({
                "schema": format!("gl3padic/ep/{SCHEMA_VERSION}"),
                "prime": p,
                "j": j,
                "eta_conductor": chi.conductor(),
                "gauss": cyc_json(&v.gauss),
                "scalar": quad_json(&v.scalar),
            }))
        }
        Command::Einf { a, j } => {
            let v = e_infty(*a, *j).map_err(CliError::Domain)?;
            Ok(json!({
                "schema": format!("gl3padic/einf/{SCHEMA_VERSION}"),
                "a": a,
                "j": j,
                "e_infty": period_json(&v),
            }))
        }
        Command::Zeta { form, j, input } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(path).map_err(domain)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).map_err(domain)?;
                    s
                }
            };
            let zin: ZetaCliInput = serde_json::from_str(&text)
                .map_err(|e| CliError::Domain(format!("malformed input JSON: {e}")))?;
            let rd = RefinedData::from_sigma_denominator(
                zin.prime,
                zin.alpha.clone(),
                zin.r,
                zin.d1.clone(),
                zin.d2.clone(),
            );
            let eta1 = character_from(zin.eta1_modulus, &zin.eta1_exponents)?;
            let eta2 = character_from(zin.eta2_modulus, &zin.eta2_exponents)?;
            let zi = ZetaInput::new(rd, eta1, eta2, zin.weight_a)
                .map_err(CliError::Domain)?;
            let value = if form == "sum" {
                let y = y_bruteforce(&zi).map_err(CliError::Domain)?;
                let (x1, x2) = specialization_point(zin.prime, *j);
                let spec = y.rational_part_at(&x1, &x2);
                let mut out = laurent_json(&y);
                out["specialized"] =
                    spec.map(|v| quad_json(&v)).unwrap_or(Value::Null);
                out
            } else {
                let rep = zin.rep.as_ref().ok_or_else(|| {
                    CliError::Domain("closed form requires the 'rep' field".into())
                })?;
                let omega = zin
                    .omega_eta2_p
                    .clone()
                    .unwrap_or_else(QuadRat::one);
                let y = y_closed_form(&zi, *j, rep, &omega)
                    .map_err(CliError::Domain)?;
                let spec = y.rational_part_at(&QuadRat::one(), &QuadRat::one());
                let mut out = laurent_json(&y);
                out["specialized"] =
                    spec.map(|v| quad_json(&v)).unwrap_or(Value::Null);
                out
            };
            Ok(json!({
                "schema": format!("gl3padic/zeta/{SCHEMA_VERSION}"),
                "form": form,
                "j": j,
                "value": value,
            }))
        }
        Command::Branch { a } => {
            let decomp = branching::restrict_decompose(&branching::Gl3Irrep::new(*a));
            let mut constituents = Vec::new();
            for i in 0..=*a {
                for jj in 0..=*a {
                    let c = branching::BranchingDecomp::constituent(i, jj);
                    constituents.push(json!({
                        "i": i,
                        "j": jj,
                        "dimension": c.dimension(),
                        "multiplicity": 1,
                    }));
                }
            }
            let total = decomp.total_dimension();
            let dim = branching::dimension(*a);
            if total != dim {
                return Err(CliError::Verification(format!(
                    "branching dimension mismatch: {total} vs {dim}"
                )));
            }
            Ok(json!({
                "schema": format!("gl3padic/branch/{SCHEMA_VERSION}"),
                "a": a,
                "gl3_dimension": dim,
                "total_restricted_dimension": total,
                "constituents": constituents,
            }))
        }
        Command::Eis { action } => {
            let EisAction::CheckDistribution { p, t } = action;
            let holds = eisenstein::schwartz_distribution_check(*p, *t);
            if !holds {
                return Err(CliError::Verification(format!(
                    "distribution property fails at p = {p}, t = {t}"
                )));
            }
            Ok(json!({
                "schema": format!("gl3padic/eis/{SCHEMA_VERSION}"),
                "check": "distribution",
                "p": p,
                "t": t,
                "holds": true,
            }))
        }
        Command::Measure { input, eta, moment } => {
            let text = std::fs::read_to_string(input).map_err(domain)?;
            let mj: MeasureJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Domain(format!("malformed measure JSON: {e}")))?;
            let m = measure_from_json(&mj).map_err(CliError::Domain)?;
            let m = if *moment > 0 { m.moment_twist(*moment) } else { m };
            let chi = eta.build()?;
            let v = m.evaluate(&chi).map_err(CliError::Domain)?;
            Ok(json!({
                "schema": format!("gl3padic/measure/{SCHEMA_VERSION}"),
                "moment": moment,
                "eta_conductor": chi.conductor(),
                "value": cyc_json(&v),
            }))
        }
        Command::Symsq { p, j, eta, digits } => {
            let digits = default_digits(*digits);
            let f = delta_form(44_100);
            let chi = eta.build()?;
            let rhs = interpolation_rhs(&f, *p, *j, &chi, digits)
                .map_err(CliError::Domain)?;
            let minus = critical_set(
                f.weight - 2,
                gl3padic::symsq::central_parity(&f),
                &chi,
                CriticalSide::Minus,
            );
            let pet = petersson_via_edge(&f, digits).map_err(CliError::Domain)?;
            let alg = algebraicity_check_at_digits(&f, *p, *j, &chi, &pet, digits)
                .map_err(CliError::Domain)?;
            let algebraicity = match &alg {
                Algebraicity::Recognized { value, residual } => json!({
                    "status": "recognized",
                    "value": rat_str(value),
                    "residual": format!("{residual:e}"),
                }),
                Algebraicity::Inconclusive { reason } => json!({
                    "status": "inconclusive",
                    "reason": reason,
                }),
                Algebraicity::Failure { best_candidate, residual } => json!({
                    "status": "failure",
                    "best_candidate": rat_str(best_candidate),
                    "residual": format!("{residual:e}"),
                }),
            };
            let report = json!({
                "schema": format!("gl3padic/symsq/{SCHEMA_VERSION}"),
                "prime": p,
                "j": j,
                "digits": digits,
                "critical_points": minus,
                "e_p": {
                    "gauss": cyc_json(&rhs.e_p.gauss),
                    "scalar": quad_json(&rhs.e_p.scalar),
                },
                "e_infty": period_json(&rhs.e_infinity),
                "euler_factor_at_p": rat_str(&rhs.euler_at_p),
                "L_numeric": format!("{:e}", rhs.l_complete.to_f64()),
                "L_depleted_numeric": format!("{:e}", rhs.l_depleted.to_f64()),
                "petersson": format!("{:e}", pet.to_f64()),
                "algebraicity_result": algebraicity,
            });
            if let Algebraicity::Failure { best_candidate, residual } = &alg {
                return Err(CliError::Verification(format!(
                    "algebraicity reconstruction failed: best candidate {} \
                     with residual {residual:e}",
                    rat_str(best_candidate)
                )));
            }
            Ok(report)
        }
        Command::Selftest => {
            let mut checks: Vec<(String, bool)> = Vec::new();
            let f = delta_form(400);
            checks.push((
                "hecke-relations".into(),
                f.check_hecke_relations(400).is_ok(),
            ));
            for p in [2u64, 3, 11] {
                let ok = match lift_satake(&f, p) {
                    Ok(s) => {
                        s.is_cohomologically_normalized()
                            && s.alpha.mul(&s.gamma) == s.beta.mul(&s.beta)
                    }
                    Err(_) => false,
                };
                checks.push((format!("satake-lift-p{p}"), ok));
            }
            checks.push((
                "critical-parity".into(),
                critical_set(2, 1, &DirichletCharacter::trivial(1), CriticalSide::Minus)
                    == vec![-2, 0],
            ));
            checks.push((
                "einf-range".into(),
                e_infty(2, 3).is_err() && e_infty(2, 2).is_ok(),
            ));
            for (p, t) in [(2u64, 2u32), (3, 2), (5, 1)] {
                checks.push((
                    format!("eis-distribution-p{p}-t{t}"),
                    eisenstein::schwartz_distribution_check(p, t),
                ));
            }
            for a in 0..=3u32 {
                let d = branching::restrict_decompose(&branching::Gl3Irrep::new(a));
                checks.push((
                    format!("branching-dimension-a{a}"),
                    d.total_dimension() == branching::dimension(a),
                ));
            }
            let all_ok = checks.iter().all(|(_, ok)| *ok);
            if !all_ok {
                let failing: Vec<&str> = checks
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(n, _)| n.as_str())
                    .collect();
                return Err(CliError::Verification(format!(
                    "selftest failed: {}",
                    failing.join(", ")
                )));
            }
            Ok(json!({
                "schema": format!("gl3padic/selftest/{SCHEMA_VERSION}"),
                "checks": checks
                    .iter()
                    .map(|(name, ok)| json!({"name": name, "ok": ok}))
                    .collect::<Vec<_>>(),
                "all_ok": all_ok,
            }))
        }
    }
}

fn print_report(report: &Value, out: &Option<PathBuf>) -> Result<(), CliError> {
    let text = format!("{}\n", serde_json::to_string_pretty(report).map_err(domain)?);
    match out {
        Some(path) => std::fs::write(path, text).map_err(domain)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Usage errors are domain errors (exit 1); --help/--version are
            // successful terminations.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            eprint!("{e}");
            std::process::exit(if benign { 0 } else { 1 });
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            if let Err(e) = print_report(&report, &cli.out) {
                eprintln!("error: {}", e.message());
                std::process::exit(e.code());
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.code());
        }
    }
}
