//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by configuration validation and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter is out of its domain (negative power, zero noise, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A run configuration is structurally unusable (index space too large,
    /// empty cross matrix, bad grid step, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A jammer strategy cannot be realized for the given channel.
    #[error("jammer strategy error: {0}")]
    Strategy(String),
}

pub type Result<T> = std::result::Result<T, Error>;
