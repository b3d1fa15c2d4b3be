use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("singular matrix (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("table violates the Leibniz identity on {0} basis triples")]
    NotLeibniz(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("input is outside this family: {0}")]
    NotThisFamily(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
