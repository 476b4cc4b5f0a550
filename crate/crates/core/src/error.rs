use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the integration engine.
///
/// Degenerate linear systems during Hermite reduction are data, not errors;
/// these variants are reserved for genuine failures and violated contracts.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    /// A zero divisor was met while inverting modulo the defining polynomial.
    #[error("defining polynomial is reducible over K(x): factor {factor}")]
    CurveReducible { factor: String },
    #[error("could not make the basis suitable: {0}")]
    SuitabilityFailure(String),
    #[error("basis update candidates exhausted: {0}")]
    UpdateCandidatesExhausted(String),
    /// `trace` holds the rank of the remainder space after each order.
    #[error("no telescoper of order <= {max_order} (remainder ranks {trace:?})")]
    MaxOrderExceeded { max_order: usize, trace: Vec<usize> },
    #[error("module containment violated: {0}")]
    ContainmentViolated(String),
}

pub type Result<T> = core::result::Result<T, Error>;
