use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// A point or parameter lies outside the model (or the operation's domain).
    #[error("domain error: {0}")]
    Domain(String),
    /// Coincident vertices, a collapsed image, or an excluded point was produced.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// A documented precondition of the called operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The inverse geodesic problem has no real solution for this point.
    #[error("unreachable point: {0}")]
    Unreachable(String),
    /// A computed value contradicts a proven bound. Always an implementation bug.
    #[error("consistency check failed: {0}")]
    Consistency(String),
    /// The ODE right-hand side hit a coordinate singularity.
    #[error("coordinate singularity: {0}")]
    Singularity(String),
}

impl GeomError {
    /// Stable error name used on diagnostic output.
    pub fn name(&self) -> &'static str {
        match self {
            GeomError::Domain(_) => "DomainError",
            GeomError::Degenerate(_) => "DegenerateError",
            GeomError::Precondition(_) => "PrecondError",
            GeomError::Unreachable(_) => "UnreachableError",
            GeomError::Consistency(_) => "ConsistencyError",
            GeomError::Singularity(_) => "SingularityError",
        }
    }
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
