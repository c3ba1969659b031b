//! `mubar`: Milnor invariants of links from the command line.
//!
//! Exit codes:
//!
//! | code | meaning                                                  |
//! |------|----------------------------------------------------------|
//! | 0    | success                                                  |
//! | 1    | `verify` found a mismatch                                |
//! | 2    | unreadable or malformed input, bad flags                 |
//! | 3    | search budget exceeded                                   |
//! | 4    | internal invariant violated                              |
//! | 5    | diagram size cap exceeded                                |
//! | 6    | request not answerable (index out of range, depth, ...)  |

mod compute;
mod ops;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mubar::{Error, LinkRepr};

/// Thread count for the scan pool; unset means one per core.
const THREADS_VAR: &str = "MUBAR_THREADS";

#[derive(Parser)]
#[command(name = "mubar", version, about = "Milnor mu-bar invariants of links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute mu, Delta and mu-bar and report filtration obstructions.
    Compute(compute::ComputeArgs),
    /// Apply a link operator and write the resulting link file.
    #[command(subcommand)]
    Op(ops::OpCommand),
    /// Run the built-in regression checks and print a pass/fail matrix.
    Verify(verify::VerifyArgs),
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn verify(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. }
            | Error::Json(_)
            | Error::ArcMultiplicity { .. }
            | Error::Orientation { .. }
            | Error::InvalidDiagram(_)
            | Error::NonPureBraid(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            Error::Invariant(_) => 4,
            Error::SizeExceeded { .. } => 5,
            _ => 6,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

pub fn read_link(path: &Path) -> CliResult<LinkRepr> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    LinkRepr::parse(&text).map_err(|e| {
        let f = Failure::from(e);
        Failure { code: f.code, message: format!("{}: {}", path.display(), f.message) }
    })
}

/// Writes `text` to `path`, or to stdout without one.
pub fn emit(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input(format!("{THREADS_VAR} must be a positive integer, got `{raw}`")))?;
    mubar::par::configure_threads(n).map_err(Failure::input)
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Compute(args) => compute::run(&args),
        Command::Op(op) => ops::run(&op),
        Command::Verify(args) => verify::run(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
