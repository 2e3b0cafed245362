use thiserror::Error;

use crate::behavior::NonsignalingReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} must be positive (got {value})")]
    NonPositive { what: String, value: usize },

    #[error("party {party} has {outcomes} outcomes; at least 2 are required")]
    TooFewOutcomes { party: usize, outcomes: usize },

    #[error("table {table}, entry {entry} is negative ({value})")]
    NegativeEntry { table: usize, entry: usize, value: f64 },

    #[error("table {table} sums to {sum}, expected 1")]
    Normalization { table: usize, sum: f64 },

    #[error("expected {expected} tables, got {got}")]
    MissingTable { expected: usize, got: usize },

    #[error("invalid party subset: {0}")]
    InvalidSubset(String),

    #[error("invalid settings tuple: {0}")]
    InvalidSettings(String),

    #[error("strategy does not match the scenario: {0}")]
    InconsistentStrategy(String),

    #[error("weights must be nonnegative and sum to 1 (sum = {sum})")]
    Weights { sum: f64 },

    #[error("scenario mismatch: {0}")]
    ScenarioMismatch(String),

    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u128 },

    #[error("value {value} for party {party} outcome {outcome} lies outside [-1, 1]")]
    ValueOutOfRange { party: usize, outcome: usize, value: f64 },

    #[error("entry {0} is not finite")]
    NotFinite(usize),

    #[error("unknown built-in functional `{0}`")]
    UnknownBuiltin(String),

    #[error("behavior is signaling (worst marginal deviation {})", .0.worst_deviation)]
    Signaling(Box<NonsignalingReport>),

    #[error("exact mode requires exact (rational) data")]
    ModeMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quantum model: {0}")]
    Quantum(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Lp(#[from] crate::lp::LpError),
}
