use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operand lies outside the mathematical domain of the operation
    /// (zero where a unit is needed, a non-prime modulus, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The place or element class is valid mathematics but not covered by
    /// an implemented formula.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A documented precondition of the operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A finite Weil model operation would leave the lattice window.
    #[error("window violation: {0}")]
    Window(String),

    /// A numerically determined quantity failed to snap to an exact value.
    #[error("consistency failure: {0}")]
    Consistency(String),

    /// An operator identity that should hold up to a scalar did not.
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    /// Enumeration bounds were exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Evaluation point outside the region of absolute convergence.
    #[error("convergence domain: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
