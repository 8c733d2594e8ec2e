//! `ckt` — validate presentations, graphs and planes, run the H-condition
//! checks, compute K-theory, and search for triangle presentations.
//!
//! Exit codes: 0 success, 1 validation/H/K failure, 2 parse or I/O error,
//! 3 internal consistency error.

mod commands;
mod report;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ckt", version, about = "Boundary-action combinatorics and Cuntz-Krieger K-theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct OutputOpts {
    /// Report rendering.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<std::path::PathBuf>,
    /// Print per-stage timings to stderr.
    #[arg(long)]
    timings: bool,
    /// Cap on internal parallelism; the current implementation is
    /// single-threaded, so any value only bounds what could run.
    #[arg(long, default_value = "1", value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation, graph, or incidence-table file.
    #[command(group(ArgGroup::new("input").required(true).args(["presentation", "graph", "incidence"])))]
    Validate {
        /// Triangle presentation file.
        #[arg(long)]
        presentation: Option<std::path::PathBuf>,
        /// Graph file.
        #[arg(long)]
        graph: Option<std::path::PathBuf>,
        /// Plane incidence-table file.
        #[arg(long)]
        incidence: Option<std::path::PathBuf>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Full pipeline: alphabet and matrices, H-report, K-theory.
    #[command(group(ArgGroup::new("input").required(true).args(["presentation", "graph", "tensor"])))]
    Ktheory {
        /// Triangle presentation file (rank-2 building system).
        #[arg(long)]
        presentation: Option<std::path::PathBuf>,
        /// Graph file (rank-1 system).
        #[arg(long)]
        graph: Option<std::path::PathBuf>,
        /// Two matrix triplet files for the tensor system.
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
        tensor: Option<Vec<std::path::PathBuf>>,
        /// Directory for matrix and letter-table exports.
        #[arg(long)]
        matrix_out: Option<std::path::PathBuf>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Search for triangle presentations over a fixed correspondence.
    Search {
        /// Plane order; only q <= 3 is in scope for searching.
        #[arg(long = "plane")]
        q: usize,
        /// Point-line correspondence file.
        #[arg(long)]
        lambda: std::path::PathBuf,
        /// Stop after this many presentations.
        #[arg(long)]
        limit: usize,
        /// Directory for the found presentation files.
        #[arg(long, default_value = ".")]
        out: std::path::PathBuf,
        /// Node budget for the backtracking search.
        #[arg(long, default_value_t = ckt_core::presentation::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

/// Failure cases mapped to process exit codes.
#[derive(Debug)]
pub enum CmdError {
    /// Unreadable or unparseable input: exit 2.
    Parse(String),
    /// Validation, H-check, or K-gate failure: exit 1.
    Failure(String),
    /// Internal consistency error: exit 3.
    Internal(String),
}

impl CmdError {
    fn exit_code(&self) -> i32 {
        match self {
            CmdError::Parse(_) => 2,
            CmdError::Failure(_) => 1,
            CmdError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Parse(m) | CmdError::Failure(m) | CmdError::Internal(m) => m,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    };
    std::process::exit(code);
}
