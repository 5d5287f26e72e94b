use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("leg signature mismatch: expected {expected:?}, found {found:?}")]
    LegMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("leg index {leg} out of range for {count} legs")]
    LegOutOfRange { leg: usize, count: usize },

    #[error("leg selection {legs:?} is invalid: {reason}")]
    BadLegSelection { legs: Vec<usize>, reason: &'static str },

    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    Dimension { what: String, expected: usize, found: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("matrix is singular (rank {rank} of {dim})")]
    Singular { rank: usize, dim: usize },

    #[error("invalid group table: {0}")]
    GroupTable(String),

    #[error("not a quantum group: {0}")]
    NotQuantumGroup(String),

    #[error("{operation} refused: {reason}")]
    TierRefusal { operation: &'static str, reason: String },

    #[error("invalid morphism: {0}")]
    Morphism(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
