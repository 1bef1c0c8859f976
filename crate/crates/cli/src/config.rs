use std::path::PathBuf;

use adafilter::{Method, PcCombiner};
use clap::{Parser, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// Run one procedure on a p-value matrix.
    Test,
    /// Run a simulation panel from a scenario file.
    Simulate,
    /// Emit the estimated V and FDP curves of a p-value matrix.
    Curve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CombinerArg {
    Simes,
    Fisher,
    Bonferroni,
}

impl From<CombinerArg> for PcCombiner {
    fn from(c: CombinerArg) -> Self {
        match c {
            CombinerArg::Simes => PcCombiner::Simes,
            CombinerArg::Fisher => PcCombiner::Fisher,
            CombinerArg::Bonferroni => PcCombiner::Bonferroni,
        }
    }
}

/// Adaptive filtering for partial conjunction (replicability) hypotheses.
#[derive(Debug, Clone, Parser)]
#[command(name = "adafilter", version)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    /// CSV of p-values: header row of study names, one hypothesis per row, NA for missing.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Where to write the TSV result (standard output if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// adafilter-bonferroni, adafilter-bh, direct-bonferroni or direct-bh.
    #[arg(long)]
    pub method: Option<String>,
    /// PC p-value combiner for the direct methods.
    #[arg(long, value_enum)]
    pub combiner: Option<CombinerArg>,
    /// Replicability level: at least r studies must be non-null.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Scenario file for `simulate`.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Master seed; overrides any seed in the scenario file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for `simulate`.
    #[arg(long, env = "ADAFILTER_THREADS")]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn method(&self) -> Result<Option<Method>, CliError> {
        self.method
            .as_deref()
            .map(|name| Method::parse(name, self.combiner.map(Into::into)).map_err(CliError::InvalidArgument))
            .transpose()
    }

    pub(crate) fn input(&self) -> Result<&PathBuf, CliError> {
        self.input.as_ref().ok_or(CliError::MissingFlag("input"))
    }

    pub(crate) fn level(&self) -> Result<usize, CliError> {
        self.r.ok_or(CliError::MissingFlag("r"))
    }

    pub(crate) fn threads(&self) -> Result<Option<usize>, CliError> {
        match self.threads {
            Some(0) => Err(CliError::InvalidArgument("--threads must be at least 1".into())),
            t => Ok(t),
        }
    }
}
