//! Command-line front end. [`run`] takes the argument vector and output
//! streams and returns the process exit code, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 invalid input or failed computation, 2 usage.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::document;
use crate::families::{generate, Family, FamilySpec, Granularity};
use crate::hypergraph::{DirectedHypergraph, EdgeId, VertexId};
use crate::measure::{head_measure, tail_measure};
use crate::metric::distance;
use crate::report::{curvature_rows, to_csv, to_json, ReportOptions};

#[derive(Debug, Parser)]
#[command(name = "hyperricci", version, about = "Exact Ollivier-Ricci curvature of directed hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a hypergraph document for structural errors.
    Validate { file: PathBuf },
    /// Curvature table for every hyperedge, or one.
    Curvature {
        file: PathBuf,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Add the Kantorovich dual bound.
        #[arg(long)]
        dual: bool,
        /// Add the digraph lower bound and the overlap upper bound.
        #[arg(long)]
        bounds: bool,
        /// Also render each value as a decimal with this many digits.
        #[arg(long, value_name = "DIGITS")]
        decimal: Option<usize>,
    },
    /// Write a generated family instance as a document.
    Generate {
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value = "unit")]
        granularity: Granularity,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hyperdistance between two vertices (`inf` when unreachable).
    Distance {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Tail and head measures of one hyperedge.
    Measures {
        file: PathBuf,
        #[arg(long)]
        edge: String,
    },
}

struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn load(path: &PathBuf) -> Result<DirectedHypergraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    document::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => {
            let h = load(&file)?;
            writeln!(
                out,
                "ok: {} vertices, {} edges",
                h.vertex_count(),
                h.edge_count()
            )?;
        }
        Command::Curvature {
            file,
            edge,
            format,
            dual,
            bounds,
            decimal,
        } => {
            let h = load(&file)?;
            let options = ReportOptions {
                dual,
                bounds,
                decimal,
            };
            let selected = edge.map(|e| vec![EdgeId::new(e)]);
            let rows = curvature_rows(&h, selected.as_deref(), &options)?;
            let text = match format {
                Format::Csv => to_csv(&rows, &options),
                Format::Json => to_json(&rows, &options),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Generate {
            family,
            sizes,
            granularity,
            seed,
            output,
        } => {
            let spec = FamilySpec {
                family,
                sizes,
                granularity,
                seed,
            };
            let text = document::serialize(&generate(&spec)?);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Distance { file, from, to } => {
            let h = load(&file)?;
            let d = distance(&h, &VertexId::new(from), &VertexId::new(to))?;
            writeln!(out, "{d}")?;
        }
        Command::Measures { file, edge } => {
            let h = load(&file)?;
            let e = EdgeId::new(edge);
            let value = json!({
                "edge": e.as_str(),
                "tail_measure": tail_measure(&h, &e)?,
                "head_measure": head_measure(&h, &e)?,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
    }
    Ok(())
}
