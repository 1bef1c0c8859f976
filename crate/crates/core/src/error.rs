use thiserror::Error;

/// Errors raised by the testing procedures and the simulation layer.
///
/// Study and hypothesis indices are zero-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p-value {value} at study {study}, hypothesis {hypothesis} is outside [0, 1]")]
    OutOfRangeEntry {
        study: usize,
        hypothesis: usize,
        value: f64,
    },
    #[error("hypothesis {0} has no observed p-values")]
    EmptyColumn(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of bounds for {len} hypotheses")]
    IndexOutOfBounds { index: usize, len: usize },
    #[error("replicability level r={r} must satisfy 2 <= r <= {max_studies}")]
    ReplicabilityLevelOutOfRange { r: usize, max_studies: usize },
    #[error("chi-square degrees of freedom must be a positive even integer, got {0}")]
    InvalidDegreesOfFreedom(usize),
    #[error("chi-square statistic must be nonnegative, got {0}")]
    NegativeStatistic(f64),
    #[error("no testable hypotheses")]
    NoTestableHypotheses,
    #[error("oracle limited to {limit} testable hypotheses, got {size}")]
    OracleSizeExceeded { size: usize, limit: usize },
    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("root search failed: {0}")]
    NoConvergence(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
