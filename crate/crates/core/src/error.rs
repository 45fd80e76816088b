use thiserror::Error;

/// Errors surfaced by the library.
///
/// The command-line front end maps these onto process exit codes: input and
/// parse problems exit 2, hypothesis violations exit 3, resource limits
/// exit 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input (bad coordinates, empty group, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A textual argument (group spec, element list, combo expression,
    /// matrix file) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A theorem hypothesis does not hold, e.g. asking for a p-elementary
    /// divisor prediction when p divides the group order. The computation
    /// is refused rather than extrapolated.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The request is well-formed but outside what the operation supports
    /// (e.g. a spanning-tree count for a directed connecting set).
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
