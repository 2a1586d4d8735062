//! Closed-form spectra for two-valued (Bernoulli) vertex weights.
//!
//! With weights in `{0, 1}` and any threshold `0 <= theta < 1`, the graph on
//! `k` ones and `l` zeros is the complete split graph: ones form a clique
//! joined to every zero, zeros stay independent. Its spectrum needs no
//! eigensolver: besides the trivial atoms `-1` (multiplicity `k - 1`) and
//! `0` (multiplicity `l - 1`), the two remaining eigenvalues are
//!
//! ```text
//! lambda_{+,-} = ((k - 1) +- sqrt((k - 1)^2 + 4 k l)) / 2
//! ```
//!
//! Averaging over `k ~ Binomial(n, p)` yields the exact mean spectrum for
//! every `n`, and the limits `p * delta_{-1} + (1 - p) * delta_0` as
//! `n -> infinity`.

use statrs::distribution::{Binomial, Discrete};

use crate::error::{Error, Result};
use crate::model::{BlockDecomposition, ModelVariant};
use crate::spectrum::SpectralDistribution;

/// The two non-trivial eigenvalues `(lambda_minus, lambda_plus)` of the
/// split graph on `k` ones and `l` zeros.
///
/// `lambda_minus <= 0 <= lambda_plus`, with product `-k l` and sum `k - 1`.
/// Degenerate inputs are meaningful: `k = 0` gives `(-1, 0)`.
pub fn lambda_pm(k: u64, l: u64) -> (f64, f64) {
    let km1 = k as f64 - 1.0;
    let disc = (km1 * km1 + 4.0 * (k as f64) * (l as f64)).sqrt();
    ((km1 - disc) / 2.0, (km1 + disc) / 2.0)
}

/// The creation-sequence block decomposition actually realized by the split
/// graph on `k` ones and `l` zeros (loopless variant, `n = k + l >= 2`).
///
/// For `k, l >= 1` with `l >= 2` this is `k = (0, k), l = (l, 0)`. With a
/// single zero (`l = 1`) the zero vertex is joined to every one-vertex and
/// the graph is complete on `k + 1` vertices, so the `s_1 = s_2` convention
/// produces the one-block decomposition instead; `l = 0` and `k = 0` are the
/// complete and null graphs.
pub fn block_decomposition(k: u64, l: u64) -> Result<BlockDecomposition> {
    if k + l < 2 {
        return Err(Error::InvalidConfig(format!(
            "split graph needs k + l >= 2, got k = {k}, l = {l}"
        )));
    }
    let (ks, ls) = match (k, l) {
        (0, l) => (vec![0], vec![l]),
        (k, 0) => (vec![k], vec![0]),
        (k, 1) => (vec![k + 1], vec![0]),
        (k, l) => (vec![0, k], vec![l, 0]),
    };
    BlockDecomposition::new(ks, ls, ModelVariant::Loopless)
}

/// Exact spectrum of the split graph on `k` ones and `l` zeros
/// (`n = k + l >= 2`).
///
/// For `k, l >= 1` this assembles the four-atom closed form directly —
/// `{-1: k-1, 0: l-1, lambda_-: 1, lambda_+: 1}` — merging coincidences
/// (for `l = 1`, `lambda_-` equals `-1` exactly and joins that atom).
/// The boundary cases `k = 0` and `l = 0` route through the general
/// block-quotient path.
pub fn sample_spectrum(k: u64, l: u64) -> Result<SpectralDistribution> {
    if k + l < 2 {
        return Err(Error::InvalidConfig(format!(
            "split graph needs k + l >= 2, got k = {k}, l = {l}"
        )));
    }
    if k == 0 || l == 0 {
        return SpectralDistribution::from_decomposition(&block_decomposition(k, l)?);
    }
    let (minus, plus) = lambda_pm(k, l);
    SpectralDistribution::from_exact_atoms(
        k + l,
        vec![(-1.0, k - 1), (0.0, l - 1), (minus, 1), (plus, 1)],
    )
}

/// Exact mean spectrum of the binary model: `n` vertices with i.i.d.
/// Bernoulli(`p`) weights, averaged over the weight randomness.
///
/// Assembles `(p - 1/n) delta_{-1} + (1 - p - 1/n) delta_0 +
/// (1/n) sum_k Binomial(n, p)(k) (delta_{lambda_-(k)} + delta_{lambda_+(k)})`
/// and merges coinciding atoms; the two leading coefficients may be negative
/// and are cancelled exactly by the `lambda` atoms at `-1` and `0`
/// (from `k = 0`, `k = n - 1` and `k = n`).
pub fn mean_spectrum(n: u64, p: f64) -> Result<SpectralDistribution> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("binary mean spectrum needs n >= 2, got {n}")));
    }
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!(
            "Bernoulli probability must lie in [0, 1], got {p}"
        )));
    }
    let binom = Binomial::new(p, n).expect("validated parameters");
    let mut pmf: Vec<f64> = (0..=n).map(|k| binom.pmf(k)).collect();
    // Guard against accumulated pmf rounding so the mixture sums to 1 exactly
    // enough for downstream mass checks.
    let pmf_sum: f64 = pmf.iter().sum();
    for q in &mut pmf {
        *q /= pmf_sum;
    }

    let nf = n as f64;
    let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(2 * n as usize + 4);
    atoms.push((-1.0, p - 1.0 / nf));
    atoms.push((0.0, 1.0 - p - 1.0 / nf));
    for (k, q) in pmf.iter().enumerate() {
        let (minus, plus) = lambda_pm(k as u64, n - k as u64);
        atoms.push((minus, q / nf));
        atoms.push((plus, q / nf));
    }
    SpectralDistribution::from_mixture_atoms(n, atoms)
}

/// Limiting spectral measure of the binary model as `n -> infinity`:
/// `p * delta_{-1} + (1 - p) * delta_0`.
pub fn limit_spectrum(p: f64) -> Result<SpectralDistribution> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!(
            "Bernoulli probability must lie in [0, 1], got {p}"
        )));
    }
    SpectralDistribution::from_mixture_atoms(1, vec![(-1.0, p), (0.0, 1.0 - p)])
}
