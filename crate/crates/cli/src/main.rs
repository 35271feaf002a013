//! `fraccite`: fractional citation counting pipeline.
//!
//! Exits 2 on usage or input errors and 1 on internal errors.

mod commands;
mod config;
mod manifest;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tagged,
    Canonical,
    Aggregate,
}

#[derive(Debug, Parser)]
#[command(name = "fraccite", version, about = "Fractional citation counting for research evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a tagged export into the canonical line-delimited corpus.
    Ingest(RunArgs),
    /// Assign cited publications to units with address queries.
    Assign(RunArgs),
    /// Count integer and fractional citations per paper and per unit.
    Count(RunArgs),
    /// Significance tests and the homogeneity graph over per-paper samples.
    Stats(RunArgs),
    /// Rankings and correlations from an aggregate table.
    Report(RunArgs),
    /// The whole pipeline, from tagged exports to reports.
    Evaluate(RunArgs),
}

/// Options shared by every subcommand. Each may also be set in `--config`;
/// flags take precedence.
#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// Flat `key = value` config file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Main input; what it holds depends on the subcommand.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Tagged export of citing records (repeatable).
    #[arg(long, value_name = "FILE")]
    pub citing: Vec<PathBuf>,
    /// Format of `--input`; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Unit definitions file.
    #[arg(long, value_name = "FILE")]
    pub units: Option<PathBuf>,
    /// Publication year(s) of the evaluated set (repeatable).
    #[arg(long, value_name = "YEAR")]
    pub py: Vec<i32>,
    /// Citation window START:END (repeatable).
    #[arg(long, value_name = "START:END")]
    pub window: Vec<String>,
    /// Units with fewer eligible publications are left out.
    #[arg(long, value_name = "N")]
    pub min_pubs: Option<u64>,
    /// Significance level for pairwise decisions.
    #[arg(long, value_name = "A")]
    pub alpha: Option<f64>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Treat rejected records as fatal.
    #[arg(long)]
    pub strict: bool,
    /// Published aggregate table (unit, P, IC3, FC3, IC5, FC5); skips counting.
    #[arg(long, value_name = "FILE")]
    pub aggregate_table: Option<PathBuf>,
    /// Comma-separated document types admitted to the evaluated set.
    #[arg(long, value_name = "TYPES")]
    pub doctypes: Option<String>,
    /// Worker threads for counting and statistics.
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => commands::ingest(a),
        Command::Assign(a) => commands::assign(a),
        Command::Count(a) => commands::count(a),
        Command::Stats(a) => commands::stats(a),
        Command::Report(a) => commands::report(a),
        Command::Evaluate(a) => commands::evaluate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
