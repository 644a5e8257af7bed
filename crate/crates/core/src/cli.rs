//! Command-line front end. Exit status: 0 when every check passes, 1 when a
//! check fails (a witness is printed), 2 on input errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use crate::bivector::{Bivector, VerificationReport};
use crate::catalog;
use crate::constraints::{jacobi_constraints, ConstraintSystem};
use crate::error::{Error, Result};
use crate::heisenberg::{generic_invariant_homogeneous, Check};
use crate::polyring::{Assignment, Poly, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hpoisson",
    version,
    about = "Heisenberg-invariant polynomial Poisson structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named structure.
    Catalog {
        #[arg(long)]
        name: String,
        /// Fix a parameter, `name=value` with a rational value.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run checks on a bivector given as JSON (`-` reads stdin).
    Verify {
        input: PathBuf,
        /// Checks to run, in this order; all of them by default.
        #[arg(long = "check", value_delimiter = ',')]
        checks: Vec<String>,
        /// File holding a polynomial to test as a Casimir.
        #[arg(long)]
        casimir: Option<PathBuf>,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Jacobi constraints on the generic invariant tensor.
    Constraints {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare the linear spans of two constraint systems (JSON files).
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate `{f, g}` for a bivector given as JSON.
    Bracket {
        input: PathBuf,
        #[arg(long, conflicts_with = "f_file", required_unless_present = "f_file")]
        f: Option<String>,
        #[arg(long)]
        f_file: Option<PathBuf>,
        #[arg(long, conflicts_with = "g_file", required_unless_present = "g_file")]
        g: Option<String>,
        #[arg(long)]
        g_file: Option<PathBuf>,
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Catalog {
            name,
            params,
            format,
        } => {
            let values = parse_params(&params)?;
            let b = catalog::lookup(&name, &values)?;
            emit(out, format, &b.to_json(), &b.to_string())?;
            Ok(EXIT_PASS)
        }
        Command::Verify {
            input,
            checks,
            casimir,
            params,
            format,
        } => verify(&input, &checks, casimir.as_deref(), &params, format, out),
        Command::Constraints { n, degree, format } => {
            if n < 3 {
                return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
            }
            let g = generic_invariant_homogeneous(n, degree)?;
            let system = jacobi_constraints(&g)?;
            emit(out, format, &system.to_json(), &system.to_string())?;
            Ok(EXIT_PASS)
        }
        Command::Equiv {
            first,
            second,
            format,
        } => {
            let a = ConstraintSystem::from_json(&read_input(&first)?)?;
            let b = ConstraintSystem::from_json(&read_input(&second)?)?;
            let witness = match a.outside_span(&b)? {
                Some(p) => Some((p, &second)),
                None => b.outside_span(&a)?.map(|p| (p, &first)),
            };
            let json = json!({
                "equivalent": witness.is_none(),
                "witness": witness.map(|(p, file)| json!({
                    "file": file.display().to_string(),
                    "poly": p.to_string(),
                })),
            });
            let text = match witness {
                None => "equivalent\n".to_string(),
                Some((p, file)) => format!(
                    "not equivalent: {p} from {} is outside the span of the other system\n",
                    file.display()
                ),
            };
            emit(
                out,
                format,
                &serde_json::to_string_pretty(&json).expect("json"),
                &text,
            )?;
            Ok(if witness.is_none() {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Bracket {
            input,
            f,
            f_file,
            g,
            g_file,
            params,
            format,
        } => {
            let b = Bivector::from_json(&read_input(&input)?)?;
            let f = poly_arg(f, f_file.as_deref(), &b)?;
            let g = poly_arg(g, g_file.as_deref(), &b)?;
            let assign = assignment(&params)?;
            let value = b.bracket(&f, &g)?.substitute(&assign)?;
            let json = json!({ "bracket": value.to_string() });
            emit(
                out,
                format,
                &serde_json::to_string_pretty(&json).expect("json"),
                &format!("{value}\n"),
            )?;
            Ok(EXIT_PASS)
        }
    }
}

fn verify(
    input: &Path,
    checks: &[String],
    casimir: Option<&Path>,
    params: &[String],
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let b = Bivector::from_json(&read_input(input)?)?;
    let mut selected = checks
        .iter()
        .map(|c| Check::from_str(c))
        .collect::<Result<Vec<_>>>()?;
    if selected.is_empty() && casimir.is_none() {
        selected = Check::ALL.to_vec();
    }
    let casimir = casimir
        .map(|path| Poly::parse(read_input(path)?.trim(), b.vs()))
        .transpose()?;
    let assign = assignment(params)?;
    let b = b.specialize(&assign)?;
    let casimir = casimir
        .map(|c| c.substitute(&assign).and_then(|c| c.embed(b.vs())))
        .transpose()?;

    let mut reports: Vec<VerificationReport> = selected.iter().map(|c| c.run(&b)).collect();
    if let Some(c) = &casimir {
        reports.push(b.is_casimir(c)?);
    }
    let all_pass = reports.iter().all(VerificationReport::passed);
    let json = json!({
        "pass": all_pass,
        "checks": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
    emit(
        out,
        format,
        &serde_json::to_string_pretty(&json).expect("json"),
        &text,
    )?;
    Ok(if all_pass {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    })
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    json!({
        "check": r.check(),
        "pass": r.passed(),
        "witness": r.witness().map(|w| json!({
            "index": w.index,
            "poly": w.poly.to_string(),
        })),
    })
}

fn emit(out: &mut dyn Write, format: Format, json: &str, text: &str) -> Result<()> {
    let res = match format {
        Format::Json => writeln!(out, "{json}"),
        Format::Text => write!(out, "{text}"),
    };
    res.map_err(|e| Error::Input(format!("cannot write output: {e}")))
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn poly_arg(text: Option<String>, file: Option<&Path>, b: &Bivector) -> Result<Poly> {
    let text = match (text, file) {
        (Some(t), _) => t,
        (None, Some(path)) => read_input(path)?,
        (None, None) => return Err(Error::InvalidArgument("missing polynomial".into())),
    };
    Poly::parse(text.trim(), b.vs())
}

/// `name=value` pairs with rational values.
pub fn parse_params(params: &[String]) -> Result<BTreeMap<String, BigRational>> {
    let mut out = BTreeMap::new();
    for p in params {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected NAME=VALUE, got `{p}`")))?;
        let value = parse_rational(value.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("`{value}` is not a rational number")))?;
        if out.insert(name.trim().to_string(), value).is_some() {
            return Err(Error::InvalidArgument(format!("`{name}` given twice")));
        }
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n = n.trim().parse().ok()?;
        let d: num_bigint::BigInt = d.trim().parse().ok()?;
        if d == num_bigint::BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

fn assignment(params: &[String]) -> Result<Assignment> {
    Ok(parse_params(params)?
        .into_iter()
        .map(|(k, v)| (k, Value::from(v)))
        .collect())
}
