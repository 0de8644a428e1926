use thiserror::Error;

/// Errors shared by every numerical operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("pole of {transform} at {at}")]
    Pole { transform: &'static str, at: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("eigensolver failed to converge at index {index}")]
    Convergence { index: usize },

    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    #[error("interval exceeds the spectrum's completeness window: {0}")]
    IncompleteWindow(String),

    #[error("window too small around the query point: {0}")]
    InsufficientWindow(String),

    #[error("operation not supported for this model: {0}")]
    UnsupportedModel(&'static str),

    #[error("spectra have disjoint windows")]
    DisjointWindows,

    #[error("degenerate eigenvalue pair (lambda = mu)")]
    DegeneratePair,

    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects NaN and infinities on entry to public operations.
pub fn ensure_finite(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}
