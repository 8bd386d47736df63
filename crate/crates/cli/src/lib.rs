//! The `levelt` command line: JSON in, JSON out, one summary line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use levelt::wire::{
    matrix_to_json, report_to_json, spectra_from_json, tuple_from_json, tuple_to_json, to_json,
};
use levelt::{
    algebra_dimension, analyze, hypergeometric_tuple, is_pseudo_reflection, levelt_construct,
    levelt_normalize, rigidity_index, shared_frame, simultaneous_conjugator, Error, FrameMode,
    HypergeometricParams, Rational, Scalar, ScalarTuple, TupleFile,
};
use thiserror::Error as ThisError;

#[derive(Debug, Parser)]
#[command(name = "levelt", version, about = "Exact Levelt tuples, pseudo-reflections and rigidity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build companion matrices from a JSON list of spectra.
    Construct {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report irreducibility, spectra, frames and rigidity of a tuple.
    Analyze {
        input: PathBuf,
        /// Where to write the report.
        #[arg(short, long, visible_alias = "report")]
        output: Option<PathBuf>,
        /// Also look for eigenvalues in Q(zeta_N) for this N.
        #[arg(long, default_value_t = 1)]
        conductor: u64,
    },
    /// The hypergeometric triple for exponents a_1..a_n and b_1..b_n.
    Hypergeom {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        num: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        den: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find u with u g_i u^-1 = h_i for two tuples.
    Conjugate {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Conjugate a tuple sharing its first n-1 columns to companion form.
    Normalize {
        input: PathBuf,
        /// First move to a shared frame when the columns are not shared yet.
        #[arg(long)]
        frame: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Math(#[from] Error),
}

impl CliError {
    /// 2 for unreadable or malformed input, 4 for a singular member,
    /// 3 for any other violated precondition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Math(e) if e.is_input_error() => 2,
            CliError::Math(Error::Singular { .. }) => 4,
            CliError::Math(_) => 3,
        }
    }
}

/// What a command produced: a JSON artifact and a one-line summary.
pub struct Outcome {
    pub artifact: String,
    pub summary: String,
    pub output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_tuple(path: &Path) -> Result<TupleFile<Scalar>, CliError> {
    Ok(tuple_from_json(&read(path)?)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Construct { input, output } => {
            let specs = spectra_from_json::<Scalar>(&read(&input)?)?;
            let t = levelt_construct(&specs)?;
            Ok(Outcome {
                summary: format!(
                    "constructed n={} p={}, spectra pairwise disjoint: yes",
                    t.n(),
                    t.p()
                ),
                artifact: tuple_to_json(&TupleFile::new(t)),
                output,
            })
        }
        Command::Analyze {
            input,
            output,
            conductor,
        } => {
            let file = read_tuple(&input)?;
            let r = analyze(&file.tuple, conductor.max(1))?;
            let rigidity = r
                .rigidity_index
                .map_or_else(|| "n/a".to_string(), |x| x.to_string());
            Ok(Outcome {
                summary: format!(
                    "n={} p={}, irreducible: {}, burnside dim: {}, common eigenvalues: {}, invariant witness: {}, rigidity index: {}",
                    r.n,
                    r.p,
                    yes_no(r.irreducible),
                    r.burnside_dim,
                    r.spectra_intersection.values.len(),
                    r.invariant_witness
                        .as_ref()
                        .map_or_else(|| "none".to_string(), |w| format!("dim {}", w.dim())),
                    rigidity
                ),
                artifact: report_to_json(&r),
                output,
            })
        }
        Command::Hypergeom { num, den, output } => {
            let parse = |xs: &[String]| {
                xs.iter()
                    .map(|s| levelt::field::parse_rational(s))
                    .collect::<Result<Vec<Rational>, Error>>()
            };
            let params = HypergeometricParams::new(parse(&num)?, parse(&den)?)?;
            let (a, b) = params.companion_pair()?;
            let t = hypergeometric_tuple(&params)?;
            let pseudo = is_pseudo_reflection(&a.mul(&b.inverse()?))?;
            let irreducible = algebra_dimension(t.members())? == t.n() * t.n();
            let chi = rigidity_index(&t)?;
            let mut file = TupleFile::new(t);
            file.notes.insert(
                "members".into(),
                "(A, B^-1, B A^-1) with A, B the companion matrices listed under companions".into(),
            );
            file.notes
                .insert("pseudo_reflection".into(), "A B^-1, the inverse of member 3".into());
            file.companions = Some(vec![a, b]);
            Ok(Outcome {
                summary: format!(
                    "pseudo-reflection: {}, irreducible: {}, rigidity index: {}",
                    yes_no(pseudo),
                    yes_no(irreducible),
                    chi
                ),
                artifact: tuple_to_json(&file),
                output,
            })
        }
        Command::Conjugate {
            first,
            second,
            output,
        } => {
            let t1 = read_tuple(&first)?.tuple;
            let t2 = read_tuple(&second)?.tuple;
            let u = simultaneous_conjugator(&t1, &t2)?;
            Ok(Outcome {
                summary: format!("simultaneously conjugate: {}", yes_no(u.is_some())),
                artifact: u.as_ref().map_or_else(|| to_json(&()), matrix_to_json),
                output,
            })
        }
        Command::Normalize {
            input,
            frame,
            output,
        } => {
            let t = read_tuple(&input)?.tuple;
            let (basis, normalized) = if frame {
                normalize_via_frame(&t)?
            } else {
                levelt_normalize(&t)?
            };
            let mut file = TupleFile::new(normalized);
            file.basis_change = Some(basis);
            Ok(Outcome {
                summary: format!("normalized n={} p={} to companion form", t.n(), t.p()),
                artifact: tuple_to_json(&file),
                output,
            })
        }
    }
}

fn normalize_via_frame(
    t: &ScalarTuple,
) -> Result<(levelt::ScalarMatrix, ScalarTuple), CliError> {
    let f = shared_frame(t)?;
    if f.mode() != FrameMode::Columns {
        return Err(Error::Precondition(
            "the members share a common image, not a common kernel, so no basis gives shared columns"
                .into(),
        )
        .into());
    }
    let framed = t.conjugate_by(f.basis_change())?;
    let (inner, normalized) = levelt_normalize(&framed)?;
    Ok((f.basis_change().mul(&inner), normalized))
}

/// Runs a parsed command line and returns the process exit code. The
/// summary goes to stdout when the artifact goes to a file, and to stderr
/// when the artifact itself is written to stdout.
pub fn run(cli: Cli) -> i32 {
    let result = execute(cli.command).and_then(|out| {
        match &out.output {
            Some(path) => {
                fs::write(path, &out.artifact).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                println!("{}", out.summary);
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(out.artifact.as_bytes());
                eprintln!("{}", out.summary);
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
