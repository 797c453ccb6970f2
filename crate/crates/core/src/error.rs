use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    /// Matrix shape does not fit the operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The Wronskian-type determinant vanished identically.
    #[error("degenerate determinant: {0}")]
    Degeneracy(String),

    /// An index outside the admissible index set was requested.
    #[error("index error: {0}")]
    Index(String),

    /// Attempted to remove an element from an empty component.
    #[error("cannot reduce pair: component {0} is empty")]
    Reduction(u8),

    /// A numerical precondition failed; the message carries the certificate.
    #[error("precondition failed: {0}")]
    Certificate(String),

    /// The integration path passes too close to a zero of the denominator.
    #[error(
        "integration path too close to a zero (min |Ω| = {min_modulus:e}); try a smaller radius"
    )]
    PathThroughZero { min_modulus: f64 },

    /// No admissible contour radius could be found.
    #[error("no feasible contour radius; obstructing roots: {0}")]
    Search(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Error {
    Error::Parameter {
        name,
        reason: reason.into(),
    }
}
