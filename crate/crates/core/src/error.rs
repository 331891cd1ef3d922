use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its domain. `condition` names the
    /// violated requirement in plain words.
    #[error("{op}: {condition}")]
    Precondition { op: &'static str, condition: String },

    #[error("invalid strategy:\n{0}")]
    InvalidStrategy(ValidationReport),

    #[error("syndrome has {got} entries but the strategy has {expected} weighings")]
    SyndromeLength { expected: usize, got: usize },

    #[error("oracle out of range: {subsets} coin subsets exceed the cap of {cap}")]
    OracleOutOfRange { subsets: String, cap: u64 },

    #[error("strategy inconsistent with own arrangement: no {f}-fake situation matches the realized syndrome")]
    InconsistentArrangement { f: usize },

    #[error("{d} fake coins is representable by the configuration, e.g. {witness:?}")]
    DisprovedCountRepresentable { d: usize, witness: Vec<usize> },

    #[error("placement {placement:?} is not a solution vector for {f} fake coins")]
    InfeasiblePlacement { f: usize, placement: Vec<usize> },

    #[error("{m} weighings is too many for this operation (limit {max})")]
    TooManyWeighings { m: usize, max: usize },

    #[error("malformed strategy file: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn pre(op: &'static str, condition: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            condition: condition.into(),
        }
    }
}
