//! dp5: construct del Pezzo point configurations over 5-power cyclotomic
//! layers, check general position, certify good reduction, compute classical
//! invariants, and run the finiteness degree bound.
//!
//! JSON goes to standard output (one document per invocation); progress and
//! warnings go to standard error. Exit codes: 0 pass/success, 1 check
//! failed, 2 usage error, 3 internal or cap error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dp5_core::cyclo::CycField;
use dp5_core::finiteness::{build_problem_deg4, finiteness_degrees, load_problem, Mode};
use dp5_core::invariants::{clebsch_salmon, InvariantVector, PentahedralCoeffs, CS_WEIGHTS};
use dp5_core::jsonio::{config_to_json, parse_config, AnyConfig};
use dp5_core::modular::hensel_delta;
use dp5_core::points::{certificate_for_config, check_general_position, f_criterion};
use dp5_core::rat::Rat;
use dp5_core::surfaces::{invariants_implicitized, invariants_paper};
use dp5_core::{verify, Error, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "dp5", version, about = "del Pezzo surfaces over 5-power cyclotomic layers")]
struct Cli {
    /// Seed for every randomized procedure (embeddings, modular engine)
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for parallel sections (default: all processors)
    #[arg(long, global = true, env = "DP5_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pipeline {
    Paper,
    Implicitize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Modular,
    Exact,
}

#[derive(Subcommand)]
enum Cmd {
    /// The unit delta with delta^2 = -1, delta = 2 (mod 5) at a layer
    Delta {
        #[arg(long)]
        layer: u32,
    },
    /// Construct the 6- or 5-point blow-up configuration at a layer
    Construct {
        #[arg(long)]
        degree: u8,
        #[arg(long)]
        layer: u32,
        /// Also write the configuration JSON to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// General position of a configuration file; with --prime, reduction
    /// modulo a prime of the residue field
    Check {
        config: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        /// Attach the norm section (mu-norms and determinant norms)
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 128)]
        max_residue_degree: u64,
    },
    /// Invariant vectors: degree 3 from pentahedral coefficients, degree 4
    /// from the (u, v) family
    Invariants {
        #[arg(long)]
        degree: u8,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long, value_enum, default_value = "paper")]
        pipeline: Pipeline,
        /// Five comma-separated rationals a0,...,a4
        #[arg(long)]
        pentahedral: Option<String>,
    },
    /// Resultant degree bound deg(h1) * deg(h2)
    Finiteness {
        #[arg(long, default_value_t = 4)]
        degree: u8,
        #[arg(long, value_enum, default_value = "modular")]
        mode: ModeArg,
        /// Externally supplied problem JSON (degree-3 case)
        #[arg(long)]
        problem: Option<PathBuf>,
    },
    /// Symbolic identity checks
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let jobs = cli.jobs;
    let outcome = dp5_core::run_with_jobs(jobs, move || run(cli.cmd, seed));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::ExcludedPrime
        | Error::NotCoprime { .. }
        | Error::NonComparable(_)
        | Error::DegenerateResultant
        | Error::Json(_)
        | Error::Io(_) => 2,
        _ => 3,
    }
}

fn emit(doc: &Value) -> dp5_core::Result<()> {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, doc)?;
    stdout.write_all(b"\n")?;
    Ok(())
}

fn run(cmd: Cmd, seed: u64) -> dp5_core::Result<u8> {
    match cmd {
        Cmd::Delta { layer } => {
            let residue = hensel_delta(layer)?;
            emit(&json!({
                "layer": layer,
                "modulus": residue.modulus,
                "delta": residue.value,
            }))?;
            Ok(0)
        }

        Cmd::Construct { degree, layer, out } => {
            if degree != 3 && degree != 4 {
                return Err(Error::InvalidArgument(format!("unsupported degree {degree}")));
            }
            let cf = CycField::new(layer)?;
            let cfg = dp5_core::points::config(&cf, degree)?;
            let doc = config_to_json(&cf, &cfg);
            if let Some(path) = out {
                std::fs::write(&path, format!("{:#}\n", doc))?;
                eprintln!("wrote {}", path.display());
            }
            emit(&doc)?;
            Ok(0)
        }

        Cmd::Check { config, prime, certify, max_residue_degree } => {
            let raw = std::fs::read_to_string(&config)?;
            let doc: Value = serde_json::from_str(&raw)?;
            let parsed = parse_config(&doc)?;
            match (parsed, prime) {
                (AnyConfig::Cyclotomic(cf, cfg), Some(q)) => {
                    let cert =
                        certificate_for_config(&cf, &cfg, q, seed, max_residue_degree, certify)?;
                    let valid = cert.valid;
                    emit(&serde_json::to_value(&cert)?)?;
                    Ok(if valid { 0 } else { 1 })
                }
                (AnyConfig::Cyclotomic(_, cfg), None) => {
                    let report = check_general_position(&cfg.points);
                    let verdict = report.verdict;
                    emit(&serde_json::to_value(&report)?)?;
                    Ok(if verdict { 0 } else { 1 })
                }
                (AnyConfig::Rational(cfg), None) => {
                    let report = check_general_position(&cfg.points);
                    let verdict = report.verdict;
                    emit(&serde_json::to_value(&report)?)?;
                    Ok(if verdict { 0 } else { 1 })
                }
                (AnyConfig::Rational(_), Some(_)) => Err(Error::InvalidArgument(
                    "reduction certificates need a cyclotomic configuration".into(),
                )),
            }
        }

        Cmd::Invariants { degree, u, v, pipeline, pentahedral } => match degree {
            3 => {
                let raw = pentahedral.ok_or_else(|| {
                    Error::InvalidArgument("degree 3 needs --pentahedral a0,...,a4".into())
                })?;
                let coeffs: Vec<Rat> = raw
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<dp5_core::Result<_>>()?;
                let coeffs: [Rat; 5] = coeffs
                    .try_into()
                    .map_err(|_| Error::InvalidArgument("exactly five coefficients".into()))?;
                let inv = clebsch_salmon(&PentahedralCoeffs(coeffs));
                let vector = inv.vector();
                emit(&invariant_vector_doc(&vector, &CS_WEIGHTS))?;
                Ok(0)
            }
            4 => {
                let u: Rat = u
                    .ok_or_else(|| Error::InvalidArgument("degree 4 needs --u".into()))?
                    .parse()?;
                let v: Rat = v
                    .ok_or_else(|| Error::InvalidArgument("degree 4 needs --v".into()))?
                    .parse()?;
                let (_, nonzero) = f_criterion(&u, &v)?;
                if !nonzero {
                    eprintln!(
                        "warning: f(u,v) = 0, the configuration is degenerate; values follow anyway"
                    );
                }
                let vector = match pipeline {
                    Pipeline::Paper => invariants_paper(&u, &v)?,
                    Pipeline::Implicitize => invariants_implicitized(&u, &v)?,
                };
                emit(&invariant_vector_doc(&vector, &[4, 8, 12]))?;
                Ok(0)
            }
            other => Err(Error::InvalidArgument(format!("unsupported degree {other}"))),
        },

        Cmd::Finiteness { degree, mode, problem } => {
            let problem = match problem {
                Some(path) => load_problem(&std::fs::read_to_string(&path)?)?,
                None => {
                    if degree != 4 {
                        return Err(Error::InvalidArgument(
                            "only the degree-4 problem can be built internally; supply --problem"
                                .into(),
                        ));
                    }
                    eprintln!("building the degree-4 problem...");
                    build_problem_deg4()
                }
            };
            let mode = match mode {
                ModeArg::Modular => Mode::Modular,
                ModeArg::Exact => Mode::Exact,
            };
            eprintln!("computing resultant degrees ({} mode)...", match mode {
                Mode::Modular => "modular",
                Mode::Exact => "exact",
            });
            let report = finiteness_degrees(&problem, mode, seed)?;
            emit(&serde_json::to_value(&report)?)?;
            Ok(0)
        }

        Cmd::Verify { suite } => {
            let checks = verify::suite(&suite)?;
            let all_pass = verify::all_pass(&checks);
            emit(&json!({
                "suite": suite,
                "checks": checks,
                "all_pass": all_pass,
            }))?;
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn invariant_vector_doc(v: &InvariantVector<Rat>, weights: &[u32]) -> Value {
    debug_assert_eq!(v.weights, weights);
    json!({
        "weights": v.weights,
        "values": v.values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "field": {"type": "rational"},
    })
}
