use thiserror::Error;

/// Errors produced by the library.
///
/// The four variants map one-to-one onto the CLI exit codes: shape and
/// argument errors are caller mistakes (exit 2), domain errors are inputs
/// that fail a mathematical precondition such as state validation (exit 3),
/// and numeric errors are internal identity residuals exceeding their
/// tolerance (exit 4).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix or vector dimensions do not line up.
    #[error("shape error: {0}")]
    Shape(String),

    /// An argument outside its documented range.
    #[error("argument error: {0}")]
    Argument(String),

    /// Input fails a mathematical precondition (not Hermitian, not a
    /// normalized state, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An identity that must hold analytically exceeded its numerical
    /// tolerance.
    #[error("numeric assertion failed: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
