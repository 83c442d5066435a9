//! `sym3inv`: invariants, syzygies and witness checks for third-order
//! symmetric tensors. Every subcommand prints one JSON report on standard
//! output; diagnostics go to standard error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use sym3inv::checks::{isotropy_deviation, syzygy_residuals};
use sym3inv::function_basis::{complete, ElevenBasis};
use sym3inv::io::{read_tensor, scalar_to_json, NamedValues, TensorData};
use sym3inv::optimizer::minimize;
use sym3inv::scalar::format_ratio;
use sym3inv::syzygy::{builtin_relations, discover_relations, express_in_span, Basis, DiscoveryConfig};
use sym3inv::tensor::TRACELESS_LABELS;
use sym3inv::witness::{run_witness, WitnessCase, WitnessOptions};
use sym3inv::{
    decompose, invariants_of, recompose, Error, Invariant, InvariantVector, Scalar,
    Sym3Tensor,
};

const EXIT_CODES: &str = "\
Exit codes:
  0  every check passed
  1  a check failed
  2  usage error or invalid argument
  3  malformed input (bad tensor file or fixture)
  4  field mismatch (exact-only operation given float input)
  5  I/O error";

/// Allowed deviation of the multi-start minimum from 0.2.
const PROP31_TOL: f64 = 1e-3;
const ISOTROPY_TOL: f64 = 1e-9;
/// Relative tolerance for float-field reconstruction and round trips.
const FLOAT_CHECK_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "sym3inv", version, about = "Isotropic invariants of third-order symmetric tensors", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the thirteen invariants of a tensor file
    Invariants {
        file: PathBuf,
        /// Exact rational output; the file must use the rational field
        #[arg(long)]
        exact: bool,
    },
    /// Split a tensor into its traceless part D and vector u
    Decompose { file: PathBuf },
    /// Compare K6 and I8 with their values rebuilt from the other eleven invariants
    Reconstruct { file: PathBuf },
    /// Evaluate the five built-in relations at random rational points
    VerifySyzygies {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Find all linear relations among invariant products of one degree
    Discover {
        /// 13 for all invariants, 11 for the set without K6 and I8
        #[arg(long, value_parser = parse_basis)]
        basis: Basis,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        seed: u64,
        /// Evaluation points (default: number of products + 10)
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check the invariants under random orthogonal changes of frame
    IsotropyCheck {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Multi-start minimization of 2 I2 J2 - 3 J4 over unit D and u
    Prop31 {
        #[arg(long, default_value_t = 200)]
        starts: usize,
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Build a witness tensor and compare its invariants with the stated values
    Witness {
        /// One of L6, K4, J6, L4, M6, J4
        #[arg(long, value_parser = parse_case)]
        case: WitnessCase,
        /// Angle in [0, pi] (case J4 only)
        #[arg(long)]
        theta: Option<f64>,
        /// Parameters a, b, c, d (case M6 only; give all four)
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<f64>,
    },
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    match s {
        "13" => Ok(Basis::Thirteen),
        "11" => Ok(Basis::Eleven),
        _ => Err(format!("expected 13 or 11, got {s:?}")),
    }
}

fn parse_case(s: &str) -> Result<WitnessCase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct RunReport<R: Serialize> {
    command: &'static str,
    parameters: Value,
    results: R,
    pass: bool,
    wall_time_seconds: f64,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Infeasible(_) => 2,
        Error::Malformed(_) | Error::NotTraceless(_) | Error::NotOrthogonal(_) | Error::Json(_) => 3,
        Error::FieldMismatch { .. } => 4,
        Error::Io(_) => 5,
        Error::NoConvergence(_) => 1,
    }
}

struct Outcome<R> {
    parameters: Value,
    results: R,
    pass: bool,
}

fn emit<R: Serialize>(command: &'static str, start: Instant, out: sym3inv::Result<Outcome<R>>) -> ExitCode {
    match out {
        Ok(o) => {
            let report = RunReport {
                command,
                parameters: o.parameters,
                results: o.results,
                pass: o.pass,
                wall_time_seconds: start.elapsed().as_secs_f64(),
            };
            match serde_json::to_string_pretty(&report) {
                Ok(text) => {
                    if writeln!(std::io::stdout().lock(), "{text}").is_err() {
                        return ExitCode::from(5);
                    }
                    ExitCode::from(if report.pass { 0 } else { 1 })
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn named<S: Scalar>(v: &InvariantVector<S>) -> NamedValues {
    NamedValues(v.iter().map(|(i, x)| (i.to_string(), scalar_to_json(x))).collect())
}

fn float_named(v: &InvariantVector<f64>) -> NamedValues {
    named(v)
}

fn cmd_invariants(file: &PathBuf, exact: bool) -> sym3inv::Result<Outcome<Value>> {
    let data = read_tensor(file)?;
    let values = if exact {
        named(&invariants_of(data.exact()?))
    } else {
        match &data {
            TensorData::Rational(a) => float_named(&invariants_of(a).map(Scalar::to_f64)),
            TensorData::Float(a) => float_named(&invariants_of(a)),
        }
    };
    Ok(Outcome {
        parameters: json!({ "file": file, "exact": exact }),
        results: json!({ "field": data.field().as_str(), "invariants": values }),
        pass: true,
    })
}

fn parts_json<S: Scalar>(a: &Sym3Tensor<S>) -> (Value, bool) {
    let h = decompose(a);
    let back = recompose(&h);
    let round_trip = match S::FIELD {
        sym3inv::Field::Rational => back == *a,
        sym3inv::Field::Float => {
            let size = a.components().iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
            back.components().iter().zip(a.components()).all(|(x, y)| (x.to_f64() - y.to_f64()).abs() <= FLOAT_CHECK_TOL * size)
        }
    };
    let d = NamedValues(
        TRACELESS_LABELS.iter().zip(h.deviator.components()).map(|(l, x)| (l.to_string(), scalar_to_json(x))).collect(),
    );
    let u: Vec<Value> = h.vector.0.iter().map(scalar_to_json).collect();
    (json!({ "deviator": d, "vector": u, "round_trip": round_trip }), round_trip)
}

fn cmd_decompose(file: &PathBuf) -> sym3inv::Result<Outcome<Value>> {
    let data = read_tensor(file)?;
    let (mut results, pass) = match &data {
        TensorData::Rational(a) => parts_json(a),
        TensorData::Float(a) => parts_json(a),
    };
    results["field"] = data.field().as_str().into();
    Ok(Outcome { parameters: json!({ "file": file }), results, pass })
}

fn reconstruction<S: Scalar>(a: &Sym3Tensor<S>) -> (Value, bool) {
    let direct = invariants_of(a);
    let rebuilt = complete(&ElevenBasis::from_invariants(&direct));
    let size = (direct.get(Invariant::I2).clone() + direct.get(Invariant::J2).clone()).to_f64();
    let mut pass = true;
    let mut entries = Vec::new();
    for inv in [Invariant::K6, Invariant::I8] {
        let d = direct.get(inv).clone();
        let r = rebuilt.get(inv).clone();
        let diff = r.clone() - d.clone();
        let ok = match S::FIELD {
            sym3inv::Field::Rational => diff.is_zero(),
            sym3inv::Field::Float => {
                let scale = d.to_f64().abs().max(size.powi(inv.degree() as i32 / 2));
                diff.to_f64().abs() <= FLOAT_CHECK_TOL * scale
            }
        };
        pass &= ok;
        entries.push((
            inv.to_string(),
            json!({
                "direct": scalar_to_json(&d),
                "reconstructed": scalar_to_json(&r),
                "difference": scalar_to_json(&diff),
                "match": ok,
            }),
        ));
    }
    (serde_json::to_value(NamedValues(entries)).expect("plain JSON"), pass)
}

fn cmd_reconstruct(file: &PathBuf) -> sym3inv::Result<Outcome<Value>> {
    let data = read_tensor(file)?;
    let (values, pass) = match &data {
        TensorData::Rational(a) => reconstruction(a),
        TensorData::Float(a) => reconstruction(a),
    };
    Ok(Outcome {
        parameters: json!({ "file": file }),
        results: json!({ "field": data.field().as_str(), "reconstruction": values }),
        pass,
    })
}

fn cmd_verify(samples: usize, seed: u64) -> sym3inv::Result<Outcome<Value>> {
    if samples == 0 {
        return Err(Error::InvalidArgument("--samples must be at least 1".into()));
    }
    let residuals = syzygy_residuals(seed, samples);
    let pass = residuals.iter().all(|r| r.zero);
    Ok(Outcome {
        parameters: json!({ "samples": samples, "seed": seed }),
        results: json!({ "relations": residuals }),
        pass,
    })
}

fn cmd_discover(basis: Basis, degree: u32, seed: u64, samples: Option<usize>) -> sym3inv::Result<Outcome<Value>> {
    let config = DiscoveryConfig { basis, degree, seed, sample_count: samples };
    let found = discover_relations(&config)?;
    let tables: Vec<Value> = found
        .relations
        .iter()
        .map(|r| {
            let terms: Vec<Value> = r.terms().iter().map(|(c, t)| json!([format_ratio(c), t.to_string()])).collect();
            json!({ "text": r.to_string(), "terms": terms })
        })
        .collect();
    let mut known = Vec::new();
    let mut contained_all = true;
    for r in builtin_relations() {
        if r.degree() != degree || !r.terms().iter().all(|(_, t)| t.uses_only(basis)) {
            continue;
        }
        let coeffs = express_in_span(&found.relations, r)?;
        contained_all &= coeffs.is_some();
        known.push(json!({
            "label": r.label(),
            "contained": coeffs.is_some(),
            "coefficients": coeffs.map(|c| c.iter().map(format_ratio).collect::<Vec<_>>()),
        }));
    }
    let pass = found.discarded.is_empty() && contained_all;
    let basis_name = if basis == Basis::Thirteen { "13" } else { "11" };
    Ok(Outcome {
        parameters: json!({ "basis": basis_name, "degree": degree, "seed": seed, "samples": samples }),
        results: json!({
            "products": found.products.len(),
            "sample_count": found.sample_count,
            "rank": found.rank,
            "nullity": found.nullity(),
            "relation_count": found.relations.len(),
            "discarded": found.discarded.len(),
            "relations": tables,
            "known_relations": known,
        }),
        pass,
    })
}

fn cmd_isotropy(samples: usize, seed: u64) -> sym3inv::Result<Outcome<Value>> {
    if samples == 0 {
        return Err(Error::InvalidArgument("--samples must be at least 1".into()));
    }
    let report = isotropy_deviation(seed, samples);
    let pass = report.worst <= ISOTROPY_TOL;
    Ok(Outcome {
        parameters: json!({ "samples": samples, "seed": seed }),
        results: json!({ "tolerance": ISOTROPY_TOL, "report": report }),
        pass,
    })
}

fn cmd_prop31(starts: usize, iters: usize, seed: u64) -> sym3inv::Result<Outcome<Value>> {
    let best = minimize(seed, starts, iters)?;
    let pass = (best.value - 0.2).abs() <= PROP31_TOL;
    let d = NamedValues(
        TRACELESS_LABELS.iter().zip(best.point.deviator().components()).map(|(l, x)| (l.to_string(), (*x).into())).collect(),
    );
    Ok(Outcome {
        parameters: json!({ "starts": starts, "iters": iters, "seed": seed }),
        results: json!({
            "best_value": best.value,
            "target": 0.2,
            "tolerance": PROP31_TOL,
            "best_point": { "deviator": d, "vector": best.point.vector().0 },
            "gradient_norm": best.gradient_norm,
            "iterations": best.iterations,
            "restarts": best.restarts,
            "start": best.start,
        }),
        pass,
    })
}

fn cmd_witness(case: WitnessCase, theta: Option<f64>, abcd: [Option<f64>; 4]) -> sym3inv::Result<Outcome<Value>> {
    let mut opts = WitnessOptions::default();
    if let Some(t) = theta {
        if case != WitnessCase::J4 {
            return Err(Error::InvalidArgument("--theta applies to case J4 only".into()));
        }
        opts.overrides.insert("theta".into(), t);
    }
    let given = abcd.iter().filter(|x| x.is_some()).count();
    if given > 0 {
        if case != WitnessCase::M6 {
            return Err(Error::InvalidArgument("--a, --b, --c, --d apply to case M6 only".into()));
        }
        if given != 4 {
            return Err(Error::InvalidArgument("give all of --a, --b, --c, --d".into()));
        }
        for (name, x) in ["a", "b", "c", "d"].into_iter().zip(abcd) {
            opts.overrides.insert(name.into(), x.expect("all four given"));
        }
    }
    let report = run_witness(case, &opts)?;
    let pass = report.pass;
    Ok(Outcome {
        parameters: json!({ "case": case.name(), "overrides": opts.overrides }),
        results: serde_json::to_value(&report)?,
        pass,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match &cli.command {
        Command::Invariants { file, exact } => emit("invariants", start, cmd_invariants(file, *exact)),
        Command::Decompose { file } => emit("decompose", start, cmd_decompose(file)),
        Command::Reconstruct { file } => emit("reconstruct", start, cmd_reconstruct(file)),
        Command::VerifySyzygies { samples, seed } => emit("verify-syzygies", start, cmd_verify(*samples, *seed)),
        Command::Discover { basis, degree, seed, samples } => {
            emit("discover", start, cmd_discover(*basis, *degree, *seed, *samples))
        }
        Command::IsotropyCheck { samples, seed } => emit("isotropy-check", start, cmd_isotropy(*samples, *seed)),
        Command::Prop31 { starts, iters, seed } => emit("prop31", start, cmd_prop31(*starts, *iters, *seed)),
        Command::Witness { case, theta, a, b, c, d } => emit("witness", start, cmd_witness(*case, *theta, [*a, *b, *c, *d])),
    }
}
