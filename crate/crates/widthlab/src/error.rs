//! Error type shared by all widthlab modules.

use thiserror::Error;

/// Library-wide error enum.
///
/// Errors are deliberately coarse: callers (and the CLI) mostly need to
/// distinguish "the input was bad" from "the requested computation is too
/// large" from "the construction's hypothesis is not met here".
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a precondition (wrong primality, coprimality,
    /// dimension mismatch, malformed text input, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The computation would exceed a configured resource cap.
    /// `needed` is a lower bound on the true size when the exact size is
    /// unknown (e.g. a closure that was cut off mid-enumeration).
    #[error("{what}: needs at least {needed} elements, cap is {cap}")]
    CapExceeded { what: String, needed: u64, cap: u64 },

    /// A construction's existence hypothesis fails for these inputs
    /// (e.g. no suitable vector exists because a span is already full).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// An internal cross-check that should be unreachable failed; carries a
    /// description of the inconsistency. Seeing this means a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for cap errors with a uniform message shape.
    pub fn cap(what: impl Into<String>, needed: u64, cap: u64) -> Self {
        Error::CapExceeded { what: what.into(), needed, cap }
    }
}
