//! Command-line front end.
//!
//! Every subcommand writes exactly one JSON document (or a CSV table) to
//! standard output; diagnostics go to standard error. Exit codes: 0 success,
//! 1 verification failure, 2 usage error, 3 domain error.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::field::{Field, FieldElement, FieldError};
use crate::freykani::{
    cover_record, derive_params, verify_all, verify_identities, z_locus, CheckReport, Check,
    CoverError, Membership, Sign,
};
use crate::moduli::{self, ExportFormat, Lambdas, ModuliError};
use crate::rng::Lcg64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "legendre-covers", version, about = "Genus-2 degree-3 covers of Legendre elliptic curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FieldChoice {
    /// Base field: `rational`, or a prime p ≥ 5
    #[arg(long)]
    pub field: Option<String>,
    /// Prime field 𝔽p
    #[arg(long = "p")]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived parameters, curve, cover and verifier results for one (λ, p₁)
    Params {
        #[command(flatten)]
        field: FieldChoice,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
    },
    /// Randomized identity suite over random (λ, p₁)
    Verify {
        #[command(flatten)]
        field: FieldChoice,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The Z quartic for λ, its discriminant, roots and critical-point checks
    Zlocus {
        #[command(flatten)]
        field: FieldChoice,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Enumerate admissible p₁ over 𝔽p
    Moduli {
        #[command(flatten)]
        field: FieldChoice,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all_lambdas")]
        lambda: Option<String>,
        /// Census over every λ ∉ {0, 1}
        #[arg(long, conflicts_with = "lambda")]
        all_lambdas: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Universal-family fibers for all admissible p₁ (or one)
    Family {
        #[command(flatten)]
        field: FieldChoice,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        p1: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug)]
enum RunError {
    Usage(String),
    Domain(String),
}

impl From<FieldError> for RunError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Parse(_) => RunError::Usage(e.to_string()),
            _ => RunError::Domain(e.to_string()),
        }
    }
}

impl From<CoverError> for RunError {
    fn from(e: CoverError) -> Self {
        RunError::Domain(e.to_string())
    }
}

impl From<ModuliError> for RunError {
    fn from(e: ModuliError) -> Self {
        RunError::Domain(e.to_string())
    }
}

fn resolve_field(choice: &FieldChoice) -> Result<Field, RunError> {
    match (&choice.field, choice.p) {
        (Some(s), None) if s.eq_ignore_ascii_case("rational") || s == "Q" => Ok(Field::rationals()),
        (Some(s), None) => {
            let p = s
                .parse::<u64>()
                .map_err(|_| RunError::Usage(format!("unknown field {s:?}")))?;
            Ok(Field::prime(p)?)
        }
        (None, Some(p)) => Ok(Field::prime(p)?),
        _ => Err(RunError::Usage("give exactly one of --field, --p".into())),
    }
}

fn to_json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => out,
        Err(RunError::Usage(m)) => Outcome::fail(EXIT_USAGE, format!("error: {m}\n")),
        Err(RunError::Domain(m)) => Outcome::fail(EXIT_DOMAIN, format!("error: {m}\n")),
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, RunError> {
    match cmd {
        Command::Params { field, lambda, p1, sign } => {
            let f = resolve_field(field)?;
            let params = derive_params(&f.parse(lambda)?, &f.parse(p1)?)?;
            if params.membership != Membership::InModuli {
                return Err(CoverError::NotInModuli(params.membership).into());
            }
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            let (checks, _) = verify_all(&params, sign)?;
            let rec = cover_record(&params, sign)?;
            let mut out = Outcome::ok(to_json_text(&rec));
            if !checks.all_passed() {
                out.code = EXIT_VERIFY_FAILED;
                out.stderr = format!("failed checks: {}\n", checks.failures().join(", "));
            }
            Ok(out)
        }
        Command::Verify { field, trials, seed } => {
            let f = resolve_field(field)?;
            let summary = verify_sweep(f, *trials, *seed)?;
            let failed = summary["failed_trials"].as_u64().unwrap_or(0) > 0;
            let mut out = Outcome::ok(to_json_text(&summary));
            if failed {
                out.code = EXIT_VERIFY_FAILED;
                out.stderr = "verification failures, see report\n".into();
            }
            Ok(out)
        }
        Command::Zlocus { field, lambda } => {
            let f = resolve_field(field)?;
            let z = z_locus(&f.parse(lambda)?)?;
            let mut out = Outcome::ok(to_json_text(&z.to_json()));
            if !z.report.all_passed() {
                out.code = EXIT_VERIFY_FAILED;
            }
            Ok(out)
        }
        Command::Moduli { field, lambda, all_lambdas: _, format, out } => {
            let f = resolve_field(field)?;
            let lambdas = match lambda {
                Some(l) => Lambdas::List(vec![f.parse(l)?]),
                None => Lambdas::All,
            };
            let reports = moduli::census(f, &lambdas)?;
            let format = match format {
                FormatArg::Json => ExportFormat::Json,
                FormatArg::Csv => ExportFormat::Csv,
            };
            match out {
                Some(path) => {
                    moduli::export(&reports, format, path)?;
                    Ok(Outcome {
                        code: EXIT_OK,
                        stdout: String::new(),
                        stderr: format!("wrote {}\n", path.display()),
                    })
                }
                None => Ok(Outcome::ok(moduli::render(&reports, format)?)),
            }
        }
        Command::Family { field, lambda, p1, out } => {
            let f = resolve_field(field)?;
            let l = f.parse(lambda)?;
            let fibers = match p1 {
                Some(p) => vec![moduli::family_fiber(&l, &f.parse(p)?)?],
                None if f.is_rationals() => {
                    return Err(RunError::Usage("--p1 is required over the rationals".into()))
                }
                None => moduli::family(&l)?,
            };
            let failed = fibers.iter().any(|fb| !fb.all_passed());
            let doc = Value::Array(fibers.iter().map(|fb| fb.to_json()).collect());
            let text = to_json_text(&doc);
            let mut res = match out {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| {
                        RunError::Domain(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Outcome {
                        code: EXIT_OK,
                        stdout: String::new(),
                        stderr: format!("wrote {} fibers to {}\n", fibers.len(), path.display()),
                    }
                }
                None => Outcome::ok(text),
            };
            if failed {
                res.code = EXIT_VERIFY_FAILED;
            }
            Ok(res)
        }
    }
}

fn random_element(field: Field, rng: &mut Lcg64) -> FieldElement {
    match field.modulus() {
        Some(p) => field.int(rng.below(p) as i64),
        None => {
            let n = rng.range_i64(-20, 20);
            let d = rng.range_i64(1, 20);
            field.ratio(n, d).expect("nonzero denominator")
        }
    }
}

#[derive(Default)]
struct Tally {
    pass: u64,
    fail: u64,
    skipped: u64,
}

fn record(tally: &mut BTreeMap<String, Tally>, report: &CheckReport) {
    for (name, c) in &report.checks {
        let t = tally.entry(name.clone()).or_default();
        match c {
            Check::Pass => t.pass += 1,
            Check::Fail => t.fail += 1,
            Check::Skipped(_) => t.skipped += 1,
        }
    }
}

/// Runs the full verifier suite on `trials` random `(λ, p₁)`; λ is redrawn
/// until it avoids {0, 1}. Over ℚ numerators lie in [−20, 20] and
/// denominators in [1, 20].
pub fn verify_sweep(field: Field, trials: u64, seed: u64) -> Result<Value, CoverError> {
    let mut rng = Lcg64::new(seed);
    let mut tally: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut in_moduli = 0u64;
    for _ in 0..trials {
        let lambda = loop {
            let l = random_element(field, &mut rng);
            if !l.is_zero() && !l.is_one() {
                break l;
            }
        };
        let p1 = random_element(field, &mut rng);
        let params = derive_params(&lambda, &p1)?;
        let report = if params.membership == Membership::InModuli {
            in_moduli += 1;
            let (mut r, _) = verify_all(&params, Sign::Plus)?;
            let minus = crate::freykani::verify_function_field(&params, Sign::Minus)?;
            r.checks.insert("function_field_minus".into(), Check::from_bool(minus));
            r
        } else {
            verify_identities(&params)
        };
        record(&mut tally, &report);
        if !report.all_passed() {
            failures.push(json!({
                "lambda": lambda.to_json(),
                "p1": p1.to_json(),
                "failed": report.failures(),
            }));
        }
    }
    let checks: serde_json::Map<String, Value> = tally
        .into_iter()
        .map(|(k, t)| (k, json!({"pass": t.pass, "fail": t.fail, "skipped": t.skipped})))
        .collect();
    Ok(json!({
        "field": field.to_json(),
        "seed": seed,
        "trials": trials,
        "in_moduli": in_moduli,
        "failed_trials": failures.len(),
        "failures": failures,
        "checks": checks,
        "result": if failures.is_empty() { "pass" } else { "fail" },
    }))
}
