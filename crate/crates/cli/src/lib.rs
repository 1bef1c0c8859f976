//! Command-line front end for the `adafilter` library.
//!
//! Three subcommands share one flat set of flags: `test` runs a procedure on a
//! CSV of p-values, `curve` emits the estimated V and FDP step functions, and
//! `simulate` runs a Monte Carlo panel described by a scenario file. Every
//! command writes tab-separated output with LF line endings.

mod commands;
mod config;
mod error;
mod ingest;

use std::path::Path;

pub use commands::{cmd_curve, cmd_simulate, cmd_test, Output, CURVE_HEADER, TEST_HEADER};
pub use config::{CombinerArg, RunConfig, Subcommand};
pub use error::CliError;
pub use ingest::{emit_csv, ingest_csv, parse_csv, PValueTable};

/// Dispatches on the subcommand.
pub fn run(config: &RunConfig) -> Result<Output, CliError> {
    match config.subcommand {
        Subcommand::Test => cmd_test(config),
        Subcommand::Simulate => cmd_simulate(config),
        Subcommand::Curve => cmd_curve(config),
    }
}

/// Writes the TSV to `--output` (summary to stdout), or the TSV to stdout and
/// the summary to stderr when no output path is given.
pub fn deliver(output: &Output, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => {
            std::fs::write(path, &output.tsv).map_err(|e| CliError::Io(path.display().to_string(), e))?;
            print!("{}", output.summary);
        }
        None => {
            print!("{}", output.tsv);
            eprint!("{}", output.summary);
        }
    }
    Ok(())
}

/// Short name of the error kind, e.g. `ReplicabilityLevelOutOfRange`.
pub fn error_kind(err: &CliError) -> String {
    let debug = match err {
        CliError::Core(inner) => format!("{inner:?}"),
        other => format!("{other:?}"),
    };
    debug
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_owned()
}
