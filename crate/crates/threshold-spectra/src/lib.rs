//! Spectral distributions of threshold graphs.
//!
//! Threshold graphs place an edge between vertices `i != j` exactly when
//! `X_i + X_j > theta` for i.i.d. vertex weights `X` and a fixed threshold.
//! Their adjacency spectra are almost entirely pinned to the two values `-1`
//! and `0`: all remaining eigenvalues come from a small *block quotient*
//! matrix read off the graph's creation sequence. This crate implements
//!
//! * the weight distributions and deterministic seeded sampling
//!   ([`distributions`]),
//! * the graph model, creation-sequence peeling, and block decompositions
//!   ([`model`]),
//! * exact spectra through the quotient construction, including
//!   characteristic-determinant evaluation ([`spectrum`]),
//! * a dense eigensolver oracle used to cross-check the fast path
//!   ([`oracle`]),
//! * Monte Carlo verification of the limiting behaviour of the spectral
//!   atom weights ([`asymptotics`]),
//! * closed forms for the two-valued (Bernoulli-weight) special case
//!   ([`binary`]).
//!
//! Everything is deterministic: sampling is keyed by explicit seeds with
//! documented substream derivation, and parallel experiments reduce in a
//! fixed order, so equal inputs give bit-identical outputs.

pub mod asymptotics;
pub mod binary;
pub mod distributions;
pub mod error;
pub mod model;
pub mod oracle;
pub mod spectrum;

pub use distributions::{derive_stream_seed, DistributionSpec};
pub use error::{Error, Result};
pub use model::{BlockDecomposition, CreationSequence, ModelVariant, ThresholdGraph};
pub use oracle::{dense_adjacency, dense_spectrum, multiplicity_within, DenseSpectrum};
pub use spectrum::{
    build_quotient, charpoly_eval, charpoly_eval_exact, nontrivial_count, quotient_eigenvalues,
    trivial_multiplicities, QuotientMatrix, SpectralDistribution, TrivialMultiplicities,
};
