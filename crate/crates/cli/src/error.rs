use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("ParseError: line {line}, column {column}: cannot read '{token}' as a p-value")]
    Parse { line: usize, column: usize, token: String },
    #[error("OutOfRangeEntry: line {line}, column {column}: {value} is outside [0, 1]")]
    OutOfRange { line: usize, column: usize, value: f64 },
    #[error("DuplicateIdentifier: '{id}' on line {line} already appeared on line {first}")]
    DuplicateIdentifier { id: String, line: usize, first: usize },
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow { line: usize, expected: usize, found: usize },
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("missing required flag --{0} for this subcommand")]
    MissingFlag(&'static str),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Core(#[from] adafilter::Error),
}
