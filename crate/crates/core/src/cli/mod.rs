//! Command-line front end. Every command is a thin wrapper over the library;
//! [`run`] returns the text for stdout so the binary only does I/O.
//!
//! Exit codes: 0 success, 2 unparsable input or arguments, 3 an operator
//! that fails validation.

pub mod document;
pub mod mesh;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ellipsoid::{ellipsoid_of, EllipsoidRep};
use crate::exec::Execution;
use crate::pauli::TwoQubitOperator;
use crate::tol;
use crate::witness::{
    conjecture_explore, ew4_optimal, flip_witness, is_finer, werner, wp_witness, PureState,
};
use document::{parse_documents, OperatorDocument};
use mesh::{mesh_document, Resolution};
use report::{ClassificationReport, FinerReport, WitnessReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bloch-ellipsoid",
    version,
    about = "Two-qubit operators as ellipsoids in the Bloch ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InputArgs {
    /// Operator document, or `-` for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    /// Divide by the trace instead of rejecting non-unit-trace input.
    #[arg(long)]
    pub normalize: bool,
    /// Tolerance for the Hermiticity and trace checks on input.
    #[arg(long, default_value_t = tol::HERM)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshFormat {
    Json,
    Obj,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify operators into classes A-D.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Witness properties, optionally compared against another witness.
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
        /// Decide whether the input is finer than this witness document.
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random states in the finer-than search.
        #[arg(long, default_value_t = 100_000)]
        n: usize,
    },
    /// Export the ellipsoid and the unit sphere as a mesh.
    Mesh {
        #[command(flatten)]
        input: InputArgs,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MeshFormat::Json)]
        format: MeshFormat,
        #[arg(long, default_value_t = 64)]
        lon: usize,
        #[arg(long, default_value_t = 32)]
        lat: usize,
        /// Emit a point when Bob's marginal is singular.
        #[arg(long)]
        allow_point: bool,
    },
    /// Print a named example operator: flip, wp:<p>, bell, werner:<w>, ew4opt.
    Examples { name: String },
    /// Sample witnesses inside a target ellipsoid and test optimality.
    Conjecture {
        /// bloch, xzdisc, wp:<p>, or an operator document path.
        #[arg(long, default_value = "bloch")]
        estar: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Member witnesses per handedness.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Random states per finer-than search.
        #[arg(long, default_value_t = 2000)]
        n_states: usize,
    },
}

/// Named example operators.
pub fn example(name: &str) -> Result<TwoQubitOperator, CliError> {
    let param = |s: &str| -> Result<f64, CliError> {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::parse(format!("invalid parameter {s:?} in {name:?}")))
    };
    match name.split_once(':') {
        None => match name {
            "flip" => Ok(flip_witness()),
            "bell" => Ok(PureState::phi_plus().projector()),
            "ew4opt" => {
                ew4_optimal(&PureState::phi_plus()).map_err(|e| CliError::parse(e.to_string()))
            }
            _ => Err(CliError::parse(format!("unknown example {name:?}"))),
        },
        Some(("wp", p)) => Ok(wp_witness(param(p)?)),
        Some(("werner", w)) => werner(param(w)?).map_err(|e| CliError::parse(e.to_string())),
        Some(_) => Err(CliError::parse(format!("unknown example {name:?}"))),
    }
}

fn read_source(
    path: &str,
    stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<String, CliError> {
    if path == "-" {
        stdin().map_err(|e| CliError::parse(format!("reading stdin: {e}")))
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("reading {path}: {e}")))
    }
}

fn load(
    args: &InputArgs,
    stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<Vec<(Option<String>, TwoQubitOperator)>, CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::parse(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let text = read_source(&args.input, stdin)?;
    parse_documents(&text)?
        .iter()
        .map(|d| Ok((d.label.clone(), d.to_operator(args.normalize, args.tol)?)))
        .collect()
}

fn load_one(
    args: &InputArgs,
    stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<(Option<String>, TwoQubitOperator), CliError> {
    let mut docs = load(args, stdin)?;
    if docs.len() != 1 {
        return Err(CliError::parse(format!(
            "expected one operator document, found {}",
            docs.len()
        )));
    }
    Ok(docs.remove(0))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn target_ellipsoid(name: &str) -> Result<EllipsoidRep, CliError> {
    match name {
        "bloch" => Ok(EllipsoidRep::bloch_sphere()),
        "xzdisc" => Ok(EllipsoidRep::xz_disc()),
        s if s.starts_with("wp:") => Ok(ellipsoid_of(&example(s)?)),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::parse(format!("--estar {path}: {e}")))?;
            let docs = parse_documents(&text)?;
            let [doc] = docs.as_slice() else {
                return Err(CliError::parse(
                    "--estar document must hold exactly one operator",
                ));
            };
            Ok(ellipsoid_of(&doc.to_operator(false, tol::HERM)?))
        }
    }
}

/// Runs one command and returns what goes to stdout.
pub fn run(
    cli: Cli,
    stdin: &mut dyn FnMut() -> std::io::Result<String>,
) -> Result<String, CliError> {
    match cli.command {
        Command::Classify { input, json } => {
            let ops = load(&input, stdin)?;
            let reports = Execution::default().map_slice(&ops, |(label, op)| {
                ClassificationReport::build(label.clone(), op)
            });
            let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
            Ok(if json {
                match reports.as_slice() {
                    [one] => to_json(one),
                    many => to_json(&many),
                }
            } else {
                reports
                    .iter()
                    .map(ClassificationReport::to_table)
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Witness {
            input,
            json,
            against,
            seed,
            n,
        } => {
            let (label, op) = load_one(&input, stdin)?;
            let finer = match against {
                Some(path) => {
                    let other_args = InputArgs {
                        input: path.display().to_string(),
                        ..input.clone()
                    };
                    let (other_label, other) = load_one(&other_args, stdin)?;
                    let verdict = is_finer(&op, &other, seed, n);
                    let name = other_label.unwrap_or_else(|| path.display().to_string());
                    Some(FinerReport::new(name, &op, &other, &verdict))
                }
                None => None,
            };
            let r = WitnessReport::build(label, &op, finer);
            Ok(if json { to_json(&r) } else { r.to_table() })
        }
        Command::Mesh {
            input,
            out,
            format,
            lon,
            lat,
            allow_point,
        } => {
            let (_, op) = load_one(&input, stdin)?;
            let doc = mesh_document(
                &op,
                Resolution {
                    n_lon: lon,
                    n_lat: lat,
                },
                allow_point,
            )?;
            let text = match format {
                MeshFormat::Json => serde_json::to_string(&doc).expect("mesh serializes") + "\n",
                MeshFormat::Obj => doc.to_obj(),
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| {
                        CliError::validation(format!("writing {}: {e}", path.display()))
                    })?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Examples { name } => {
            let op = example(&name)?;
            Ok(to_json(&OperatorDocument::from_operator(name, &op)))
        }
        Command::Conjecture {
            estar,
            seed,
            n,
            n_states,
        } => {
            let target = target_ellipsoid(&estar)?;
            let report = conjecture_explore(&target, seed, n, n_states)
                .map_err(|e| CliError::validation(e.to_string()))?;
            Ok(to_json(&report))
        }
    }
}
