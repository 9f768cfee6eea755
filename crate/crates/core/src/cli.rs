//! The `grasslog` command line: `eval`, `verify` and `table`.
//!
//! Exit codes: 0 success, 1 failed contract, 2 usage or parse error,
//! 3 degenerate input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::configspace::AnyConfiguration;
use crate::error::{Error, Result};
use crate::grasspoly::{
    grass_dilog_closed, grass_dilog_numeric, grass_trilog_closed, grass_trilog_numeric, special_stratum_value, DEFAULT_CP1_TOL,
    DEFAULT_EPSILONS,
};
use crate::polylog::{bloch_wigner, sv_trilog};
use crate::quad::orientation_calibrate;
use crate::verify::{self, Suite, VerifyOptions, CONVENTION_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "grasslog",
    version,
    about = "Grassmannian di- and trilogarithms: closed forms, quadrature and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function and print JSON.
    Eval(EvalArgs),
    /// Run a verification suite and print the JSON report.
    Verify(VerifyArgs),
    /// Special-stratum limit against the single-valued trilogarithm, as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    SvDilog,
    SvTrilog,
    GrassDilog,
    GrassTrilog,
    SpecialStratum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Closed,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct EvalArgs {
    pub function: Function,
    /// Complex argument: `0.5`, `1/2`, `-1`, `1+i`, `2-0.5i`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Configuration JSON file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: EvalMethod,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Sample budget; defaults to 1e5 on CP^1 and 5e6 on CP^2.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Target absolute error of the CP^1 quadrature.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Overrides both the CP^1 and the CP^2 budget.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    /// Comma-separated arguments, e.g. `--z 1/2,-1,2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn parse_real(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("cannot read {s:?} as a number"));
    let v = match s.split_once('/') {
        Some((p, q)) => p.trim().parse::<f64>().map_err(|_| bad())? / q.trim().parse::<f64>().map_err(|_| bad())?,
        None => s.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Reads `a`, `bi`, `a+bi` or `a-bi`, each part optionally a fraction.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other)?,
    };
    Ok(Complex64::new(re, im))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Degenerate(_) | Error::CrossRatioDegenerate(_) | Error::NonGeneric(_) | Error::Singularity(_) => EXIT_DEGENERATE,
        _ => EXIT_USAGE,
    }
}

fn read_config(path: &Option<PathBuf>) -> Result<AnyConfiguration> {
    let path = path.as_ref().ok_or_else(|| Error::Parse("--config is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AnyConfiguration::from_json_str(&text)
}

fn require_z(z: &Option<String>) -> Result<Complex64> {
    parse_complex(z.as_deref().ok_or_else(|| Error::Parse("--z is required".into()))?)
}

fn header() -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(verify::REPORT_SCHEMA));
    m.insert("convention".into(), json!(CONVENTION_VERSION));
    m.insert("orientation".into(), json!(orientation_calibrate().tag()));
    m
}

fn eval_json(a: &EvalArgs) -> Result<Value> {
    let mut m = header();
    m.insert(
        "function".into(),
        json!(a.function.to_possible_value().map(|v| v.get_name().to_owned())),
    );
    m.insert("seed".into(), json!(a.seed));
    match a.function {
        Function::SvDilog => {
            m.insert("value".into(), json!(bloch_wigner(require_z(&a.z)?)));
        }
        Function::SvTrilog => {
            m.insert("value".into(), json!(sv_trilog(require_z(&a.z)?)));
        }
        Function::SpecialStratum => {
            let z = require_z(&a.z)?;
            let v = special_stratum_value(z, &DEFAULT_EPSILONS)?;
            m.insert("value".into(), json!(v));
            m.insert("residuals".into(), json!({ "minus_sv_trilog": v - sv_trilog(z) }));
        }
        Function::GrassDilog => {
            let c = read_config(&a.config)?;
            let budget = a.budget.unwrap_or(VerifyOptions::default().cp1_budget);
            m.insert("budget".into(), json!(budget));
            let closed = match c {
                AnyConfiguration::Exact(ref e) => grass_dilog_closed(e),
                AnyConfiguration::Float(ref f) => grass_dilog_closed(f),
            };
            let numeric = |m: &mut Map<String, Value>| -> Result<f64> {
                let e = match c {
                    AnyConfiguration::Exact(ref e) => grass_dilog_numeric(e, budget, a.tol.unwrap_or(DEFAULT_CP1_TOL))?,
                    AnyConfiguration::Float(ref f) => grass_dilog_numeric(f, budget, a.tol.unwrap_or(DEFAULT_CP1_TOL))?,
                };
                m.insert("sigma".into(), json!(e.sigma));
                m.insert("samples".into(), json!(e.samples));
                m.insert("converged".into(), json!(e.converged));
                Ok(e.value)
            };
            match a.method {
                EvalMethod::Closed => {
                    m.insert("value".into(), json!(closed?));
                }
                EvalMethod::Numeric => {
                    let v = numeric(&mut m)?;
                    m.insert("value".into(), json!(v));
                }
                EvalMethod::Both => {
                    let closed = closed?;
                    let v = numeric(&mut m)?;
                    m.insert("value".into(), json!(closed));
                    m.insert("numeric".into(), json!(v));
                    m.insert("residuals".into(), json!({ "numeric_minus_closed": v - closed }));
                }
            }
        }
        Function::GrassTrilog => {
            let c = read_config(&a.config)?;
            let budget = a.budget.unwrap_or(VerifyOptions::default().cp2_budget);
            let report = match (a.method, &c) {
                (EvalMethod::Closed, AnyConfiguration::Exact(e)) => grass_trilog_closed(e)?,
                (EvalMethod::Closed, AnyConfiguration::Float(f)) => grass_trilog_closed(f)?,
                (_, AnyConfiguration::Exact(e)) => grass_trilog_numeric(e, budget, a.seed)?,
                (_, AnyConfiguration::Float(f)) => grass_trilog_numeric(f, budget, a.seed)?,
            };
            let value = match (a.method, &report.numeric) {
                (EvalMethod::Numeric, Some(e)) => e.value,
                _ => report.closed,
            };
            if a.method != EvalMethod::Closed {
                m.insert("budget".into(), json!(budget));
            }
            m.insert("value".into(), json!(value));
            if let Some(e) = &report.numeric {
                m.insert("sigma".into(), json!(e.sigma));
                m.insert("samples".into(), json!(e.samples));
            }
            m.insert("report".into(), serde_json::to_value(&report).expect("plain data"));
        }
    }
    Ok(Value::Object(m))
}

fn fmt_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

/// CSV of `z, extrapolated, L3(z), difference`; unusable `z` give an error row.
pub fn table_csv(zs: &[String]) -> Result<String> {
    let mut out = String::from("z,extrapolated,L3,difference\n");
    for (label, row) in table_rows(zs)? {
        match row {
            Ok((v, l3)) => out.push_str(&format!("{label},{v},{l3},{}\n", v - l3)),
            Err(_) => out.push_str(&format!("{label},error,error,error\n")),
        }
    }
    Ok(out)
}

type Row = (String, std::result::Result<(f64, f64), Error>);

fn table_rows(zs: &[String]) -> Result<Vec<Row>> {
    zs.iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let z = parse_complex(s)?;
            Ok((
                s.to_owned(),
                special_stratum_value(z, &DEFAULT_EPSILONS).map(|v| (v, sv_trilog(z))),
            ))
        })
        .collect()
}

fn table_json(zs: &[String]) -> Result<Value> {
    let rows = table_rows(zs)?
        .into_iter()
        .map(|(z, r)| match r {
            Ok((v, l3)) => json!({ "z": z, "extrapolated": v, "L3": l3, "difference": v - l3 }),
            Err(e) => json!({ "z": z, "error": e.to_string() }),
        })
        .collect();
    let mut m = header();
    m.insert("rows".into(), Value::Array(rows));
    Ok(Value::Object(m))
}

fn emit(text: &str, path: &Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string())),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Eval(a) => {
            if a.format != Format::Json {
                return Err(Error::Parse("eval writes JSON only".into()));
            }
            emit(&fmt_value(&eval_json(&a)?), &a.out, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            if a.format != Format::Json {
                return Err(Error::Parse("verify writes JSON only".into()));
            }
            let suite: Suite = a.suite.parse()?;
            let mut opts = VerifyOptions {
                seed: a.seed,
                ..VerifyOptions::default()
            };
            if let Some(b) = a.budget {
                opts.cp1_budget = b;
                opts.cp2_budget = b;
            }
            let report = verify::run(suite, &opts);
            emit(&report.to_json(), &a.out, out)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Table(a) => {
            let text = match a.format {
                Format::Csv => table_csv(&a.z)?,
                Format::Json => fmt_value(&table_json(&a.z)?),
            };
            emit(&text, &a.out, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
