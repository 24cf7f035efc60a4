mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gframe::constructions::{fixture, named_fixtures, FIXTURE_NAMES};
use gframe::erasure::DEFAULT_WCE_ITERATIONS;
use gframe::io::{self, SchemaError};
use gframe::linalg::{self, ComplexVector};
use gframe::random::{gaussian_matrix, rng};
use gframe::stability::truncated_canonical_dual;
use gframe::{
    blind_reconstruct, canonical_dual, ck_sufficient_condition, error_report, nearest_projective,
    optimal_dual_two_error, truncate, verify_dual, wce_condition, wce_minimize, ErasureMask,
    ReconstructionSystem, DEFAULT_TOLERANCE,
};
use num_complex::Complex64;
use report::{float, floats, Report};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "gframe", version, about = "Analyze finite-dimensional reconstruction systems")]
struct Cli {
    /// Numerical tolerance for every rank, definiteness and equality test.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Iteration budget of the worst-case minimizer.
    #[arg(long, global = true, default_value_t = DEFAULT_WCE_ITERATIONS)]
    iterations: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a system and report its frame operator and bounds.
    Analyze { path: PathBuf },
    /// Compute a dual of a system.
    Dual {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = DualKind::Canonical)]
        kind: DualKind,
        /// Also write the dual to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a signal, erase packets and decode blindly.
    Erase {
        path: PathBuf,
        /// Dual used for decoding; the canonical dual when absent.
        #[arg(long)]
        dual: Option<PathBuf>,
        /// Erased packets, 1-based and comma separated.
        #[arg(long, value_delimiter = ',')]
        mask: Vec<usize>,
        /// Signal as a JSON array of numbers or [re, im] pairs; a seeded
        /// random unit vector when absent.
        #[arg(long)]
        signal: Option<String>,
    },
    /// Drop a known set of packets and inspect what remains.
    Truncate {
        path: PathBuf,
        /// Dropped packets, 1-based and comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<usize>,
    },
    /// Nearest projective system in the Frobenius distance.
    Approx { path: PathBuf },
    /// List the built-in systems or write one to a file.
    Fixtures {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, requires = "name")]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DualKind {
    Canonical,
    TwoError,
    Wce,
}

impl DualKind {
    fn label(self) -> &'static str {
        match self {
            DualKind::Canonical => "canonical",
            DualKind::TwoError => "two-error",
            DualKind::Wce => "wce",
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<gframe::Error> for Failure {
    fn from(e: gframe::Error) -> Self {
        match e {
            gframe::Error::InvalidArgument(msg) => Failure::Usage(msg),
            gframe::Error::Shape(msg) => Failure::Usage(msg),
            gframe::Error::SignatureMismatch { .. } => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

type CmdResult = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        eprintln!("error: --tolerance must be a positive finite number");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.render());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical precondition failed: {msg}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let tol = cli.tolerance;
    match &cli.command {
        Command::Analyze { path } => analyze(path, tol),
        Command::Dual { path, kind, out } => dual(cli, path, *kind, out.as_deref()),
        Command::Erase { path, dual, mask, signal } => {
            erase(cli, path, dual.as_deref(), mask, signal.as_deref())
        }
        Command::Truncate { path, drop } => truncate_cmd(path, drop, tol),
        Command::Approx { path } => approx(path, tol),
        Command::Fixtures { name, out } => fixtures(name.as_deref(), out.as_deref(), tol),
    }
}

fn load(path: &Path) -> Result<ReconstructionSystem, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    io::from_json(&text).map_err(|e| match e {
        SchemaError::Syntax { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        SchemaError::Invalid(err) => Failure::Usage(format!("{}: {err}", path.display())),
    })
}

fn write_system(path: &Path, v: &ReconstructionSystem) -> Result<(), Failure> {
    fs::write(path, io::to_json(v))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn path_value(path: &Path) -> Value {
    Value::String(path.display().to_string())
}

/// 0-based indices from 1-based user input.
fn zero_based(indices: &[usize], m: usize) -> Result<Vec<usize>, Failure> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > m {
                Err(Failure::Usage(format!("packet index {i} out of range 1..={m}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn analyze(path: &Path, tol: f64) -> CmdResult {
    let v = load(path)?;
    let cl = v.classify(tol);
    let mut r = Report::new("analyze", tol);
    r.input("path", path_value(path)).input("system", report::system(&v));
    r.output("classification", report::classification(&cl))
        .output("frame_operator", report::matrix(&v.frame_operator()))
        .output("block_norms", floats(&v.block_norms()));
    if !cl.is_rs {
        r.output("is_rs", false).output("message", "not a reconstruction system");
        return Ok(r);
    }
    r.output("is_rs", true);
    if cl.is_projective {
        let norms = gframe::erasure::wce_norms(&v, tol)?;
        let cond = wce_condition(&v, tol)?;
        r.output(
            "wce_condition",
            json!({
                "holds": cond.is_some(),
                "value": cond.map(float),
                "norms": floats(&norms),
            }),
        );
    }
    Ok(r)
}

fn dual(cli: &Cli, path: &Path, kind: DualKind, out: Option<&Path>) -> CmdResult {
    let tol = cli.tolerance;
    let v = load(path)?;
    v.ensure_rs(tol)?;
    let mut r = Report::new("dual", tol);
    r.input("path", path_value(path))
        .input("kind", kind.label())
        .input("system", report::system(&v));
    let w = match kind {
        DualKind::Canonical => canonical_dual(&v, tol)?,
        DualKind::TwoError => {
            if !v.classify(tol).is_projective {
                return Err(Failure::Numeric("the two-error optimal dual needs a projective system".into()));
            }
            optimal_dual_two_error(&v, tol)?
        }
        DualKind::Wce => {
            r.input("seed", cli.seed).input("iterations", cli.iterations);
            let min = wce_minimize(&v, cli.iterations, cli.seed, tol)?;
            r.output("iterations_run", min.iterations);
            min.dual
        }
    };
    let cand = verify_dual(&w, &v, tol)?;
    let errors = error_report(&v, &w)?;
    let canonical_errors = error_report(&v, &canonical_dual(&v, tol)?)?;
    r.output("dual", report::system(&w))
        .output("dual_residual", float(cand.dual_residual))
        .output("verified", cand.is_verified())
        .output("errors", report::error_report(&errors))
        .output("canonical_errors", report::error_report(&canonical_errors));
    if let Some(out) = out {
        write_system(out, &w)?;
        r.input("out", path_value(out));
    }
    Ok(r)
}

fn parse_signal(text: &str, d: usize) -> Result<ComplexVector, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Failure::Usage(format!("--signal: invalid JSON at line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let items = value
        .as_array()
        .ok_or_else(|| Failure::Usage("--signal must be a JSON array".into()))?;
    if items.len() != d {
        return Err(Failure::Usage(format!("--signal has {} entries, the system has d = {d}", items.len())));
    }
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let bad = || Failure::Usage(format!("--signal entry {i} is not a number or [re, im] pair"));
            match item {
                Value::Number(n) => n.as_f64().map(|x| Complex64::new(x, 0.0)).ok_or_else(bad),
                Value::Array(pair) if pair.len() == 2 => match (pair[0].as_f64(), pair[1].as_f64()) {
                    (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexVector::from_vec(entries))
}

fn erase(cli: &Cli, path: &Path, dual: Option<&Path>, mask: &[usize], signal: Option<&str>) -> CmdResult {
    let tol = cli.tolerance;
    let v = load(path)?;
    v.ensure_rs(tol)?;
    let w = match dual {
        Some(p) => {
            let w = load(p)?;
            w.ensure_same_signature(&v)?;
            w
        }
        None => canonical_dual(&v, tol)?,
    };
    let x = match signal {
        Some(text) => parse_signal(text, v.d())?,
        None => {
            let g = gaussian_matrix(&mut rng(cli.seed), v.d(), 1, 1.0);
            let x = ComplexVector::from_column_slice(g.as_slice());
            let n = x.norm();
            x.unscale(n)
        }
    };
    let erased = zero_based(mask, v.m())?;
    let mask = ErasureMask::new(erased.clone(), v.m())?;

    let coeffs = v.analysis_apply(&x)?;
    let y = blind_reconstruct(&v, &w, &coeffs, &mask)?;
    let error = &x - &y;
    // Predicted error: sum over erased j of W_j^* V_j x.
    let mut predicted = ComplexVector::zeros(v.d());
    for &j in mask.indices() {
        predicted += w.block(j).adjoint() * (v.block(j) * &x);
    }
    let cand = verify_dual(&w, &v, tol)?;

    let mut r = Report::new("erase", tol);
    r.input("path", path_value(path))
        .input("dual", dual.map_or(Value::String("canonical".into()), path_value))
        .input("mask", erased.iter().map(|i| i + 1).collect::<Vec<_>>())
        .input("signal", report::vector(&x));
    if signal.is_none() {
        r.input("seed", cli.seed);
    }
    r.output("reconstruction", report::vector(&y))
        .output("error", report::vector(&error))
        .output("error_norm", float(error.norm()))
        .output("predicted_error_norm", float(predicted.norm()))
        .output("signal_norm", float(x.norm()))
        .output("dual_residual", float(cand.dual_residual))
        .output("dual_verified", cand.is_verified())
        .output("errors", report::error_report(&error_report(&v, &w)?));
    Ok(r)
}

fn truncate_cmd(path: &Path, drop: &[usize], tol: f64) -> CmdResult {
    let v = load(path)?;
    v.ensure_rs(tol)?;
    let dropped = zero_based(drop, v.m())?;
    let rep = truncate(&v, &dropped, tol)?;
    let (ck, ck_estimate) = ck_sufficient_condition(&v, &dropped, tol)?;

    let mut r = Report::new("truncate", tol);
    r.input("path", path_value(path))
        .input("drop", rep.dropped.iter().map(|i| i + 1).collect::<Vec<_>>())
        .input("system", report::system(&v));
    let pair = |(a, b): (f64, f64)| json!([float(a), float(b)]);
    r.output("m_matrix", report::matrix(&rep.m_j))
        .output("m_min_singular_value", float(linalg::smallest_singular_value(&rep.m_j)))
        .output("is_rs_after", rep.is_rs_after)
        .output("frame_operator_after", report::matrix(&rep.s_truncated))
        .output("lower_bound_estimate", rep.lower_bound_estimate.map(float))
        .output("bounds_after", rep.bounds_actual.map(pair))
        .output("bounds_full", pair(rep.bounds_full))
        .output("ck_condition", json!({ "holds": ck, "lower_bound_estimate": float(ck_estimate) }));
    if rep.is_rs_after {
        let dual = truncated_canonical_dual(&v, &dropped, tol)?;
        r.output("truncated_canonical_dual", report::system(&dual));
    } else {
        r.output("truncated_canonical_dual", Value::Null);
    }
    Ok(r)
}

fn approx(path: &Path, tol: f64) -> CmdResult {
    let v = load(path)?;
    let a = nearest_projective(&v, tol)?;
    let mut r = Report::new("approx", tol);
    r.input("path", path_value(path)).input("system", report::system(&v));
    r.output("approximation", report::system(&a.system))
        .output("weights", floats(&a.weights))
        .output("distance", float(a.distance))
        .output("classification", report::classification(&a.system.classify(tol)));
    Ok(r)
}

fn fixtures(name: Option<&str>, out: Option<&Path>, tol: f64) -> CmdResult {
    let mut r = Report::new("fixtures", tol);
    match name {
        None => {
            let list: serde_json::Map<String, Value> = named_fixtures()
                .iter()
                .map(|(n, v)| {
                    (n.clone(), json!({ "system": report::system(v), "classification": report::classification(&v.classify(tol)) }))
                })
                .collect();
            r.output("fixtures", Value::Object(list));
        }
        Some(name) => {
            let v = fixture(name).ok_or_else(|| {
                Failure::Usage(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))
            })?;
            r.input("name", name);
            if let Some(out) = out {
                write_system(out, &v)?;
                r.input("out", path_value(out));
            }
            r.output("system", report::system(&v))
                .output("classification", report::classification(&v.classify(tol)));
        }
    }
    Ok(r)
}
