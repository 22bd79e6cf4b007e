//! The `bbp` command line. `run` is pure over its arguments so tests can
//! drive it without a subprocess.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formula::catalog::{self, CatalogEntry, NAMES};
use crate::formula::json::{factorial_from_json, factorial_to_json, formula_from_json, formula_to_json, series_to_json};
use crate::formula::subgroup::{subgroup_decompose, SubgroupResult};
use crate::formula::{combine, derive, make_series, regroup, split_re_im, Efficiency, Regrouped};
use crate::roots::{half_plane_check, real_root_count, unit_disk_check, DEFAULT_TOL};
use crate::scalar::{format_rational, parse_gaussian, parse_rational, GaussianRational, Rational};
use crate::verify::{digit_extract, verify_entry, verify_formula};
use crate::{BbpFormula, GaussianBbpFormula};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "bbp", version, about = "Exact BBP-like formulas for logarithms and π")]
struct Cli {
    /// Emit JSON instead of Σ notation.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Series for log at 1 - s; with --regroup, a BBP-like formula.
    Gen {
        #[arg(long)]
        n: u64,
        /// Gaussian rational such as 1/2 or 1/2+1/2*i.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        regroup: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Regroup the series at period m.
    Regroup {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Real and imaginary parts of a Gaussian formula.
    Split {
        #[arg(long)]
        input: String,
    },
    /// Rational combination of formulas, each term `coeff:name`.
    Combine {
        #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
        terms: Vec<String>,
    },
    /// List entries, or show one.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        verify: bool,
        #[arg(long, env = "BBP_PRECISION_BITS", default_value_t = 128)]
        bits: u32,
    },
    /// Interval evaluation against an independent reference value.
    Verify {
        input: String,
        #[arg(long, env = "BBP_PRECISION_BITS", default_value_t = 128)]
        bits: u32,
    },
    /// Digits starting at a position, without the earlier ones.
    Digits {
        input: String,
        #[arg(long)]
        pos: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 16)]
        base: u32,
    },
    /// Derive a formula whose value is zero.
    Null {
        #[arg(long, value_enum)]
        derive: NullKind,
        #[arg(long, env = "BBP_PRECISION_BITS", default_value_t = 128)]
        bits: u32,
    },
    /// Root analysis of the degree n - 1 polynomial family.
    Roots {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Nonzero coefficients per bit of base.
    Efficiency { input: String },
    /// Write k over the generators 2, 2^n - 1, 2^n + 1.
    Subgroup {
        #[arg(long)]
        k: BigUint,
        #[arg(long)]
        nmax: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NullKind {
    Bbp16,
    Base64,
}

/// Exit status plus captured streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A computed result: JSON form, human form, and whether it counts as a
/// verification failure.
struct Output {
    json: Value,
    human: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, human: String) -> Self {
        Output { json, human, failed: false }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Domain(_)
        | Error::RegroupImpossible { .. }
        | Error::UnsupportedPoint(_)
        | Error::CombineImpossible(_)
        | Error::NeedsRegrouping(_)
        | Error::UnsupportedConstant(_)
        | Error::UnknownEntry { .. } => EXIT_DOMAIN,
        Error::VerificationFailed(_) | Error::TheoremViolation(_) | Error::IndeterminateDigit { .. } | Error::Inconclusive(_) => {
            EXIT_VERIFY
        }
        Error::Consistency(_) | Error::Derivation(_) => EXIT_OTHER,
    }
}

fn error_json(kind: &str, message: &str, code: i32) -> Value {
    json!({"error": {"kind": kind, "message": message, "exit_code": code}})
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values built from json! serialize") + "\n"
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return match (code, wants_json) {
                (EXIT_OK, _) => Outcome { code, stdout: text, stderr: String::new() },
                (_, true) => Outcome { code, stdout: pretty(&error_json("parse", text.trim(), code)), stderr: String::new() },
                (_, false) => Outcome { code, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => {
            let code = if out.failed { EXIT_VERIFY } else { EXIT_OK };
            let stdout = if cli.json { pretty(&out.json) } else { out.human + "\n" };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                Outcome { code, stdout: pretty(&error_json(e.kind(), &e.to_string(), code)), stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        }
    }
}

/// Entry point for the binary; returns the process exit status.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn parse_base(b: &Option<String>) -> Result<Option<BigInt>> {
    b.as_deref()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid base {s:?}"))))
        .transpose()
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// A catalog name, or a path to a formula or factorial-series JSON file.
fn load_entry(input: &str) -> Result<CatalogEntry> {
    let path = Path::new(input);
    if !path.is_file() {
        return catalog::lookup(input);
    }
    let v = read_json(path)?;
    if v.get("kind").and_then(Value::as_str) == Some("factorial") {
        factorial_from_json(&v).map(CatalogEntry::Factorial)
    } else {
        formula_from_json::<Rational>(&v).map(CatalogEntry::Bbp)
    }
}

fn load_gaussian(input: &str) -> Result<GaussianBbpFormula> {
    let path = Path::new(input);
    if path.is_file() {
        return formula_from_json::<GaussianRational>(&read_json(path)?);
    }
    let f = catalog::lookup(input)?.to_bbp()?;
    Ok(Regrouped::Real(f).complex())
}

fn entry_human(e: &CatalogEntry) -> String {
    match e {
        CatalogEntry::Bbp(f) => f.to_string(),
        CatalogEntry::Factorial(fs) => fs.to_string(),
    }
}

fn regrouped_output(r: Regrouped) -> Output {
    match r {
        Regrouped::Real(f) => {
            let f = f.integerized();
            Output::ok(formula_to_json(&f), f.to_string())
        }
        Regrouped::Complex(f) => Output::ok(formula_to_json(&f), f.to_string()),
    }
}

fn gen(n: u64, s: &str, m: Option<usize>, base: &Option<String>) -> Result<Output> {
    let s = parse_gaussian(s)?;
    let base = parse_base(base)?;
    let series = make_series(n, &s)?;
    if let Some(m) = m {
        return Ok(regrouped_output(regroup(&series, m, base.as_ref())?));
    }
    let factorial = if series.s.im == Rational::default() { series.factorial_form().ok() } else { None };
    let mut human = series.to_string();
    if let Some(fs) = &factorial {
        human = format!("{human}\n{fs}");
    }
    let json = json!({
        "series": series_to_json(&series),
        "factorial": factorial.as_ref().map(factorial_to_json),
    });
    Ok(Output::ok(json, human))
}

fn split(input: &str) -> Result<Output> {
    let f = load_gaussian(input)?;
    let (re, im) = split_re_im(&f)?;
    Ok(Output::ok(
        json!({"re": formula_to_json(&re), "im": formula_to_json(&im)}),
        format!("Re: {re}\nIm: {im}"),
    ))
}

fn parse_term(t: &str) -> Result<(Rational, BbpFormula)> {
    let (c, name) = t.split_once(':').ok_or_else(|| Error::Parse(format!("term {t:?} is not coeff:name")))?;
    Ok((parse_rational(c)?, load_entry(name)?.to_bbp()?))
}

fn combine_cmd(terms: &[String]) -> Result<Output> {
    let parsed = terms.iter().map(|t| parse_term(t)).collect::<Result<Vec<_>>>()?;
    let f = combine(&parsed)?.normalize();
    Ok(Output::ok(formula_to_json(&f), f.to_string()))
}

fn verified(mut body: Value, e: &CatalogEntry, bits: u32) -> Result<Output> {
    let report = verify_entry(e, bits)?;
    body["verified"] = json!(report.ok);
    body["verification"] = report.to_json();
    let human = format!(
        "{}\nverified: {} ({}, {} bits)",
        entry_human(e),
        report.ok,
        report.method,
        report.value.width_bits().min(bits)
    );
    Ok(Output { json: body, human, failed: !report.ok })
}

fn catalog_cmd(name: &Option<String>, verify: bool, bits: u32) -> Result<Output> {
    let Some(name) = name else {
        let rows: Vec<Value> = NAMES
            .iter()
            .map(|n| catalog::lookup(n).map(|e| json!({"name": n, "target": e.target().to_json()})))
            .collect::<Result<_>>()?;
        let human = NAMES
            .iter()
            .map(|n| catalog::lookup(n).map(|e| format!("{n:16} {}", e.target())))
            .collect::<Result<Vec<_>>>()?
            .join("\n");
        return Ok(Output::ok(json!({"entries": rows}), human));
    };
    let e = catalog::lookup(name)?;
    if verify {
        verified(e.to_json(), &e, bits)
    } else {
        Ok(Output::ok(e.to_json(), entry_human(&e)))
    }
}

fn verify_cmd(input: &str, bits: u32) -> Result<Output> {
    let e = load_entry(input)?;
    let report = verify_entry(&e, bits)?;
    let mut json = report.to_json();
    json["verified"] = json!(report.ok);
    json["bits"] = json!(bits);
    let human = format!(
        "{}\nvalue     ∈ [{:.20}, ±2^-{}]\nreference ∈ [{:.20}, ±2^-{}]\nverified: {} ({})",
        entry_human(&e),
        report.value.midpoint(),
        report.value.width_bits(),
        report.reference.midpoint(),
        report.reference.width_bits(),
        report.ok,
        report.method
    );
    Ok(Output { json, human, failed: !report.ok })
}

fn digits_cmd(input: &str, pos: u64, count: usize, base: u32) -> Result<Output> {
    let f = load_entry(input)?.to_bbp()?;
    let run = digit_extract(&f, pos, count, base)?;
    let json = serde_json::to_value(&run).map_err(|e| Error::Consistency(e.to_string()))?;
    Ok(Output::ok(json, format!("{} digits of {} from position {}: {}", base, f.target, pos, run.digits)))
}

fn null_cmd(kind: NullKind, bits: u32) -> Result<Output> {
    let f = match kind {
        NullKind::Bbp16 => derive::bbp_null16()?,
        NullKind::Base64 => derive::null64()?,
    };
    let report = verify_formula(&f, bits)?;
    let mut json = formula_to_json(&f);
    json["verified"] = json!(report.ok);
    json["verification"] = report.to_json();
    Ok(Output { json, human: format!("{f}\nverified: {}", report.ok), failed: !report.ok })
}

fn roots_cmd(n: u64, tol: f64) -> Result<Output> {
    let report = half_plane_check(n, tol)?;
    let real = real_root_count(n)?;
    let disk = unit_disk_check(n)?;
    let mut json = report.to_json();
    json["parity_law"] = json!(real.count == if n % 2 == 1 { 1 } else { 0 });
    json["bound_sum"] = json!(format_rational(&disk.bound_sum));
    json["unit_disk_ok"] = json!(report.unit_disk_ok && disk.ok);
    let mut lines = vec![format!("n = {n}: degree {}, {} real root(s)", report.degree, report.real_root_count)];
    for (a, b) in &report.real_roots {
        lines.push(format!("  real in [{:.12}, {:.12}]", to_f64(a), to_f64(b)));
    }
    for d in &report.complex_roots {
        let z = d.approx();
        lines.push(format!("  {:+.12} {:+.12}i  (radius {:.1e})", z.re, z.im, to_f64(&d.radius)));
    }
    lines.push(format!(
        "half-plane Re < -1/2: {}; unit disk: {}; w-correspondence: {}",
        report.half_plane_ok,
        report.unit_disk_ok && disk.ok,
        report.w_correspondence_ok
    ));
    let failed = !(report.half_plane_ok && report.unit_disk_ok && disk.ok && report.w_correspondence_ok);
    Ok(Output { json, human: lines.join("\n"), failed })
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

fn efficiency_cmd(input: &str) -> Result<Output> {
    let f = load_entry(input)?.to_bbp()?;
    let eff = f.efficiency()?;
    let (text, exact) = match &eff {
        Efficiency::Exact(r) => (format_rational(r), true),
        Efficiency::Real { value, .. } => (format!("{value:.12}"), false),
    };
    let json = json!({
        "input": input,
        "nonzero": f.nonzero_count(),
        "base": f.base.to_string(),
        "efficiency": text,
        "exact": exact,
    });
    Ok(Output::ok(json, format!("efficiency({input}) = {text}  ({} nonzero, base {})", f.nonzero_count(), f.base)))
}

fn subgroup_cmd(k: &BigUint, nmax: u32) -> Result<Output> {
    Ok(match subgroup_decompose(k, nmax)? {
        SubgroupResult::Found(d) => {
            let formula = d.log_formula(256)?;
            let factors: Vec<Value> = d.factors.iter().map(|(g, e)| json!({"generator": g.to_string(), "exponent": e})).collect();
            let mut human = d.to_string();
            if let Some(f) = &formula {
                human = format!("{human}\n{f}");
            }
            Output::ok(
                json!({
                    "k": k.to_string(),
                    "status": "found",
                    "decomposition": d.to_string(),
                    "factors": factors,
                    "formula": formula.as_ref().map(formula_to_json),
                }),
                human,
            )
        }
        SubgroupResult::Obstructed(o) => {
            let mut lines = vec![format!("{k} is not generated by 2, 2^n±1 for n ≤ {nmax}")];
            let primes: Vec<Value> = o
                .primes
                .iter()
                .map(|p| {
                    let companions: Vec<String> = p.companions.iter().map(ToString::to_string).collect();
                    let witnesses: Vec<String> = p.witnesses.iter().map(ToString::to_string).collect();
                    lines.push(format!(
                        "  prime {} always paired with [{}] in [{}]",
                        p.prime,
                        companions.join(", "),
                        witnesses.join(", ")
                    ));
                    json!({"prime": p.prime.to_string(), "companions": companions, "witnesses": witnesses})
                })
                .collect();
            Output::ok(json!({"k": k.to_string(), "status": "obstructed", "primes": primes}), lines.join("\n"))
        }
    })
}

fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Gen { n, s, regroup, base } => gen(*n, s, *regroup, base),
        Command::Regroup { n, s, m, base } => gen(*n, s, Some(*m), base),
        Command::Split { input } => split(input),
        Command::Combine { terms } => combine_cmd(terms),
        Command::Catalog { name, verify, bits } => catalog_cmd(name, *verify, *bits),
        Command::Verify { input, bits } => verify_cmd(input, *bits),
        Command::Digits { input, pos, count, base } => digits_cmd(input, *pos, *count, *base),
        Command::Null { derive, bits } => null_cmd(*derive, *bits),
        Command::Roots { n, tol } => roots_cmd(*n, *tol),
        Command::Efficiency { input } => efficiency_cmd(input),
        Command::Subgroup { k, nmax } => subgroup_cmd(k, *nmax),
    }
}
