use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use quatmoeb::moebius::{apply, orbit};
use quatmoeb::sample::check_oracle;
use quatmoeb::spectral::{fixed_points, normal_form};
use quatmoeb::zclass::z_class_report;
use quatmoeb::{classify, BoundaryPoint, Error, QMat2, DEFAULT_TOL};

mod render;

const EXIT_PARSE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_DISAGREE: u8 = 4;

#[derive(Parser)]
#[command(name = "quatmoeb", version, about = "Dynamical types, normal forms and z-classes of 2x2 quaternionic Möbius maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative tolerance for every decision.
    #[arg(long, global = true, env = "QUATMOEB_TOL", default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,

    /// Output format; `json` emits one object per line.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Show angles in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants c1, c2, c3 and the dynamical type.
    Classify(Input),
    /// Conjugacy normal form and the conjugating matrix.
    NormalForm(Input),
    /// Centralizer type.
    Zclass(Input),
    /// Fixed points on the boundary sphere.
    FixedPoints(Input),
    /// Image of one boundary point.
    Act {
        /// `[w, x, y, z]` or `"inf"`.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        input: Input,
    },
    /// Forward orbit of one boundary point.
    Orbit {
        #[arg(long)]
        point: String,
        /// Number of iterates.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Compare the classifier with the eigenvalue oracle on random matrices.
    Check {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Input {
    /// JSON file holding one matrix or an array of matrices; `-` reads stdin.
    #[arg(default_value = "-")]
    file: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(t) => Err(format!("tolerance must be positive and finite, got {t}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Serialize)]
struct Failure {
    error: &'static str,
    message: String,
    #[serde(skip)]
    code: u8,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self { error: "parse", message: message.into(), code: EXIT_PARSE }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let error = match e {
            Error::SingularMatrix { .. } | Error::DivisionByZero => "singular",
            Error::NonPositiveDeterminant { .. } | Error::NonRealCoefficients { .. } => "invalid-spectrum",
            Error::DegenerateReduction(_) => "degenerate",
            Error::InvalidGenerator(_) => "invalid-generator",
        };
        Self { error, message: e.to_string(), code: EXIT_DEGENERATE }
    }
}

/// Lower codes take precedence: a parse error outranks a singular input.
fn combine(code: u8, other: u8) -> u8 {
    match (code, other) {
        (0, c) | (c, 0) => c,
        (a, b) => a.min(b),
    }
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if file == "-" { io::stdin().read_to_string(&mut text).map(|_| ()) } else { fs::read_to_string(file).map(|t| text = t) };
    read.map_err(|e| Failure::parse(format!("cannot read {file}: {e}")))?;
    Ok(text)
}

/// A single matrix is nested three deep (`[[q, q], [q, q]]` with `q` a 4-array);
/// anything else that is an array is a batch.
fn is_single(v: &Value) -> bool {
    v.get(0).and_then(|row| row.get(0)).and_then(|q| q.get(0)).is_some_and(Value::is_number)
}

fn split_items(text: &str) -> Result<Vec<Result<QMat2, Failure>>, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::parse(format!("invalid JSON: {e}")))?;
    let parse_one = |v: Value| serde_json::from_value::<QMat2>(v).map_err(|e| Failure::parse(format!("not a 2x2 quaternion matrix: {e}")));
    if is_single(&value) {
        return Ok(vec![parse_one(value)]);
    }
    match value {
        Value::Array(items) => Ok(items.into_iter().map(parse_one).collect()),
        _ => Err(Failure::parse("expected a matrix or an array of matrices")),
    }
}

fn parse_point(s: &str) -> Result<BoundaryPoint, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::parse(format!("invalid --point {s}: {e}")))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn run_matrix(command: &Command, a: &QMat2, tol: f64) -> Result<Value, Failure> {
    Ok(match command {
        Command::Classify(_) => to_value(&classify(a, tol)?),
        Command::NormalForm(_) => {
            let nf = normal_form(a, tol)?;
            let mut v = to_value(&nf);
            v["params"] = to_value(&nf.polar());
            v
        }
        Command::Zclass(_) => to_value(&z_class_report(a, tol)?),
        Command::FixedPoints(_) => json!({ "fixed_points": fixed_points(a, tol)? }),
        Command::Act { point, .. } => {
            a.check_invertible(tol)?;
            json!({ "image": apply(a, parse_point(point)?, tol) })
        }
        Command::Orbit { point, n, .. } => {
            a.check_invertible(tol)?;
            to_value(&orbit(a, parse_point(point)?, *n, tol))
        }
        Command::Check { .. } => unreachable!("check takes no matrix input"),
    })
}

fn input_of(command: &Command) -> Option<&Input> {
    match command {
        Command::Classify(i) | Command::NormalForm(i) | Command::Zclass(i) | Command::FixedPoints(i) => Some(i),
        Command::Act { input, .. } | Command::Orbit { input, .. } => Some(input),
        Command::Check { .. } => None,
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> io::Result<u8> {
    let tol = cli.tol;
    if let Command::Check { n, seed } = cli.command {
        let check = check_oracle(n, seed, tol);
        let code = if check.disagreements.is_empty() { 0 } else { EXIT_DISAGREE };
        match cli.format.unwrap_or(Format::Text) {
            Format::Json => writeln!(out, "{}", to_value(&check))?,
            Format::Text => {
                writeln!(out, "{}/{} agree", check.agree, check.total)?;
                for d in &check.disagreements {
                    writeln!(
                        out,
                        "disagreement at {}: classify {}, oracle {:?}, matrix {}",
                        d.index,
                        d.classify,
                        d.oracle,
                        to_value(&d.matrix)
                    )?;
                }
            }
        }
        return Ok(code);
    }

    let format = cli.format.unwrap_or(Format::Json);
    let input = input_of(&cli.command).expect("matrix commands carry an input");
    let items = match read_input(&input.file).and_then(|text| split_items(&text)) {
        Ok(items) => items,
        Err(f) => {
            render::emit(out, format, None, &to_value(&f), cli.degrees)?;
            return Ok(f.code);
        }
    };
    let batch = items.len() > 1;
    let mut code = 0;
    for (k, item) in items.into_iter().enumerate() {
        let result = item.and_then(|a| run_matrix(&cli.command, &a, tol));
        let value = match result {
            Ok(v) => v,
            Err(f) => {
                code = combine(code, f.code);
                to_value(&f)
            }
        };
        render::emit(out, format, batch.then_some(k), &value, cli.degrees)?;
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(&cli, &mut out).and_then(|code| out.flush().map(|_| code)) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("quatmoeb: {e}");
            1
        }
    };
    ExitCode::from(code)
}
