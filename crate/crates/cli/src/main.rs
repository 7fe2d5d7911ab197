//! `aac`: addition chains, assembly indices and bound sweeps from the command line.

mod commands;
mod config;
mod spaces;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use assembly_chains::assembly_core::{MemoCache, DEFAULT_NODE_BUDGET};
use assembly_chains::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::FileConfig;
use crate::spaces::{with_space, SpaceKind, SpaceSpec};
use crate::sweep::{RowStatus, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "aac", version, about = "Optimal addition chains and assembly indices")]
struct Cli {
    /// Output format (default: text, csv for sweeps).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// key = value file supplying defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Node budget of the exact solver.
    #[arg(long, global = true, env = "AAC_NODE_BUDGET")]
    budget: Option<u64>,
    /// Persistent memo file of solved indices.
    #[arg(long, global = true)]
    memo: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct SpaceArgs {
    /// j-strings.
    #[arg(long, group = "space")]
    strings: bool,
    /// Edge-coloured connected simple graphs.
    #[arg(long, group = "space")]
    graphs: bool,
    /// Coloured polyominoes.
    #[arg(long, group = "space")]
    poly: bool,
    /// Alphabet size of strings.
    #[arg(short = 'j', long = "alphabet")]
    alphabet: Option<u8>,
    /// Identify strings with their reversals.
    #[arg(long)]
    undirected: bool,
    /// Number of colours of graphs or polyominoes.
    #[arg(long)]
    colors: Option<u8>,
}

impl SpaceArgs {
    fn spec(&self, file: &FileConfig) -> SpaceSpec {
        let d = SpaceSpec::default();
        let kind = if self.strings {
            SpaceKind::Strings
        } else if self.graphs {
            SpaceKind::Graphs
        } else if self.poly {
            SpaceKind::Poly
        } else {
            file.space.unwrap_or(d.kind)
        };
        SpaceSpec {
            kind,
            alphabet: self.alphabet.or(file.alphabet).unwrap_or(d.alphabet),
            directed: !self.undirected && file.directed.unwrap_or(d.directed),
            colors: self.colors.or(file.colors).unwrap_or(d.colors),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Shortest addition chains for n.
    Oac {
        n: u64,
        /// List every optimal chain.
        #[arg(long)]
        all: bool,
        /// Print the Schönhage and Scholz brackets.
        #[arg(long)]
        brackets: bool,
    },
    /// Exact assembly index of one object.
    Ai {
        #[command(flatten)]
        space: SpaceArgs,
        /// Graph edges, e.g. "0-1,1-2:1".
        #[arg(long, conflicts_with = "object")]
        edges: Option<String>,
        /// Polyomino cells, e.g. "0,0;1,0;1,1".
        #[arg(long, conflicts_with = "object")]
        cells: Option<String>,
        /// String literal, or a JSON graph/polyomino.
        object: Option<String>,
    },
    /// Statistics per size over a whole space.
    Sweep {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        min_size: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        /// Skip enumeration and exact indices.
        #[arg(long)]
        bounds_only: bool,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
        /// Omit the timestamp header line.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// All gluings of two objects.
    Glue {
        #[command(flatten)]
        space: SpaceArgs,
        left: String,
        right: String,
    },
    /// Bounds on the assembly index at the given sizes.
    Bounds {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
}

/// Failure classes, each with its own exit code.
enum Failure {
    Parse(String),
    Budget(String),
    Invariant(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_)
            | Error::InvalidObject(_)
            | Error::InvalidArgument(_)
            | Error::PaletteMismatch { .. }
            | Error::Degenerate(_) => Failure::Parse(msg),
            Error::BudgetExceeded { .. } => Failure::Budget(msg),
            Error::Io(_) => Failure::Other(msg),
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Other(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Other(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let budget = cli.budget.or(file.node_budget).unwrap_or(DEFAULT_NODE_BUDGET);
    if budget == 0 {
        return Err(Failure::Parse("node budget must be positive".into()));
    }
    let memo = match cli.memo.as_ref().or(file.memo.as_ref()) {
        Some(p) => Some(MemoCache::open(p)?),
        None => None,
    };
    let format = cli.format.or(file.format);
    let text = format.unwrap_or(Format::Text);

    match cli.command {
        Command::Oac { n, all, brackets } => {
            let opts = commands::OacOptions { all, brackets };
            write_out(None, &commands::oac(n, &opts, text)?)
        }
        Command::Ai { space, edges, cells, object } => {
            let spec = space.spec(&file);
            let literal = match spec.kind {
                SpaceKind::Strings => object,
                SpaceKind::Graphs => edges.or(object),
                SpaceKind::Poly => cells.or(object),
            }
            .ok_or_else(|| Failure::Parse("no object given".into()))?;
            let report = with_space!(spec.build()?, s => commands::ai(&s, &literal, budget, memo.as_ref(), text)?);
            write_out(None, &report.output)?;
            match report.budget_error {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::Sweep { space, min_size, max_size, bounds_only, output, no_timestamp } => {
            let spec = space.spec(&file);
            let cfg = SweepConfig {
                space: spec,
                min_size: min_size.or(file.min_size).unwrap_or(1),
                max_size: max_size.or(file.max_size).unwrap_or(8),
                exact: !(bounds_only || file.bounds_only.unwrap_or(false)),
                node_budget: budget,
                output: output.or(file.output.clone()),
                format: format.unwrap_or(Format::Csv),
                timestamp: !no_timestamp && file.timestamp.unwrap_or(true),
            };
            let rows = with_space!(spec.build()?, s => sweep::run(&s, &cfg, memo.as_ref())?);
            let stamp = cfg.timestamp.then(|| {
                SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
            });
            write_out(cfg.output.as_ref(), &sweep::render(&rows, cfg.format, stamp))?;
            let partial = rows.iter().filter(|r| r.status == RowStatus::Partial).count();
            if partial > 0 {
                eprintln!("warning: {partial} row(s) partial; raise --budget for exact values");
            }
            if let Some(r) = rows.iter().find(|r| r.status == RowStatus::Violation) {
                return Err(Failure::Invariant(r.check().unwrap_err()));
            }
            Ok(())
        }
        Command::Glue { space, left, right } => {
            let spec = space.spec(&file);
            let out = with_space!(spec.build()?, s => commands::glue(&s, &left, &right, text)?);
            write_out(None, &out)
        }
        Command::Bounds { space, sizes } => {
            let spec = space.spec(&file);
            let out = with_space!(spec.build()?, s => commands::bounds(&s, &sizes, format.unwrap_or(Format::Csv))?);
            write_out(None, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Parse(m) => (2, m),
                Failure::Budget(m) => (3, m),
                Failure::Invariant(m) => (4, m),
                Failure::Other(m) => (1, m),
            };
            eprintln!("aac: {msg}");
            ExitCode::from(code)
        }
    }
}
