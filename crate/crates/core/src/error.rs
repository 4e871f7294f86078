use thiserror::Error;

/// Errors shared across the crate.
///
/// `Input` and `Parse` are caller mistakes, `Resource` means a configured cap
/// was hit, and `Invariant` flags a violated mathematical postcondition (for
/// example a duality gap), which callers should surface loudly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
