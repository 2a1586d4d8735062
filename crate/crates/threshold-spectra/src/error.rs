//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by model construction, spectral computation, and the
/// Monte Carlo harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A weight-distribution definition failed validation (probabilities out
    /// of range, non-normalized pmf, empty support, invalid parameters...).
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// A graph could not be built (too few vertices for the variant,
    /// non-finite values, ...).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A creation sequence violates the variant's structural conventions.
    #[error("invalid creation sequence: {0}")]
    InvalidSequence(String),

    /// A block decomposition violates the run-length invariants of its
    /// variant.
    #[error("invalid block decomposition: {0}")]
    InvalidDecomposition(String),

    /// Vertex index outside `0..n`.
    #[error("vertex index {index} out of range for graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    /// The dense-matrix oracle was asked for a graph larger than its cap.
    #[error("dense oracle requested for n = {n}, above the cap of {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    /// A Monte Carlo experiment configuration is unusable (zero trials,
    /// distribution/check mismatch, ...).
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    /// An internal cross-check failed. This indicates a bug or a violated
    /// structural guarantee, never a user error.
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}
