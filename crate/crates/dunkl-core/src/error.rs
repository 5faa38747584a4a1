use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum DunklError {
    /// Input outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input outside the documented numerical range of an approximation.
    /// The library never silently extrapolates.
    #[error("range error: {0}")]
    Range(String),
    /// A quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),
    /// Sampled data does not cover the region an operation needs,
    /// or the grid is too coarse to support the requested tolerance.
    #[error("insufficient coverage: {0}")]
    Coverage(String),
    /// The translation measure degenerates to a point mass (x = 0 or y = 0);
    /// there is no density to evaluate.
    #[error("degenerate translation measure: point mass at {at}")]
    DeltaMeasure { at: f64 },
    /// Operation not defined for the given root system.
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// Malformed serialized data.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, DunklError>;
