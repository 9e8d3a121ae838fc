use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("{what}: {count} exceeds the configured cap of {cap}")]
    Capacity {
        what: &'static str,
        count: u128,
        cap: u128,
    },

    /// The input does not span the ambient space.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("the described region is unbounded")]
    Unbounded,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("the space admits no hexagonal witness")]
    NoWitness,

    #[error("candidate construction failed: {0}")]
    Construction(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
