use thiserror::Error;

/// Errors raised by the analysis, solving and synthesis entry points.
///
/// Validation problems in raw inputs are reported as data through
/// [`ValidationReport`](crate::model::ValidationReport); they only become an
/// [`Error::Invalid`] when a caller insists on building a checked value.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("alphabet mismatch between arena and objective")]
    AlphabetMismatch,
    #[error("state {0} is a sink state")]
    SinkArgument(String),
    #[error("the objective is empty: its initial state is rejecting")]
    EmptyObjective,
    #[error("automaton is not minimal: {0}")]
    NotMinimal(String),
    #[error("Eve does not win from vertex {0}")]
    NotWinning(String),
    #[error("malformed strategy: {0}")]
    MalformedStrategy(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
