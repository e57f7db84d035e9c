//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A scalar argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// No solution exists (e.g. inverting a spherical area above `ω_n`).
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A hypothesis of the requested operation fails on the given data,
    /// e.g. convexity is required but `min κ ≤ 0`.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    /// The induced metric lost positive-definiteness or produced
    /// non-finite values at some node.
    #[error("degenerate geometry at node {node}: {reason}")]
    Degenerate { node: usize, reason: String },

    /// A parallel / flow map left the star-shaped class.
    #[error("result is not star-shaped: {0}")]
    NotStarShaped(String),

    /// Rejection sampling gave up after the configured attempt budget.
    #[error("shape generation failed after {attempts} rejection attempts")]
    RejectionExhausted { attempts: usize },

    /// A flow step was rejected and retries are exhausted.
    #[error("flow step failed: {0}")]
    StepFailed(String),

    /// Malformed configuration or shape file.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
