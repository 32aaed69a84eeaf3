//! Error types shared across the crate.
//!
//! Two broad classes matter to callers: configuration/validation problems
//! (bad parameters, malformed config files; CLI exit code 2) and numerical
//! failures (quadrature non-convergence, non-finite state; CLI exit code 3).

use thiserror::Error;

/// Top-level error for everything the engine can reject or fail at.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters or config contents. The message names the offending
    /// field with its full path (e.g. `initial_state.theta`).
    #[error("config error: {0}")]
    Config(String),

    /// A numerical procedure failed to converge or produced a non-finite
    /// value. The message carries enough context to locate the failure.
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
