use thiserror::Error;

/// Errors produced by the dressed-atom pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor or operation received a parameter outside its domain.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The requested approximation is outside its regime of validity.
    #[error("regime violation: {0}")]
    RegimeViolation(String),

    /// A root bracket or iterative solver did not converge.
    #[error("convergence failure in interval {interval}: {reason}")]
    ConvergenceFailure { interval: usize, reason: String },

    /// Adaptive or tail quadrature exhausted its budget.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// A computed quantity lies outside the range the formula admits.
    #[error("domain error: {0}")]
    DomainError(String),

    /// A normal frequency collided with a field frequency.
    #[error("division hazard: |omega_k^2 - Omega_r^2| = {gap:e} at omega_k = {omega_k}")]
    DivisionHazard { omega_k: f64, gap: f64 },

    /// A column of the transformation matrix is not unit-normalized.
    #[error("column {column} of the transformation matrix has norm deviation {deviation:e}")]
    NormalizationFailure { column: usize, deviation: f64 },

    /// A physical invariant (trace, unitarity, positivity) was violated.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
