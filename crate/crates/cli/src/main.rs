//! `poset-lab`: run constructions, verify structures, drive the reduction
//! chain and compare against brute-force oracles.
//!
//! Exit codes: 0 success, 2 input error, 3 invariant violation, 4 oracle mismatch.

mod construct;
mod io;
mod oracle;
mod reduce;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "poset-lab", version, about = "Priority constructions, reductions and oracles on finite prefixes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a priority construction against opponent scripts.
    Construct(construct::ConstructArgs),
    /// Check a structure file and report every invariant.
    Verify(verify::VerifyArgs),
    /// Run a coloring through closure, linearization, the stable solver and the pull-backs.
    Reduce(reduce::ReduceArgs),
    /// Compare the main implementations against brute-force oracles.
    Oracle(oracle::OracleArgs),
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, Serialize)]
pub struct Common {
    /// Directory to write output files to; without it the main document goes to stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Seed for generated instances.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Format of structure files.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Dot,
}

/// A failed run, mapped onto the exit code contract.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }
}

impl From<poset_lab::Error> for Failure {
    fn from(e: poset_lab::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => construct::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Reduce(args) => reduce::run(args),
        Command::Oracle(args) => oracle::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("poset-lab: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
