//! Threshold graphs, creation sequences, and block decompositions.
//!
//! A threshold graph on vertex weights `X_1, ..., X_n` with threshold `theta`
//! joins `i != j` exactly when `X_i + X_j > theta` (strict). The
//! [`ModelVariant::SelfLoops`] variant additionally places a loop at `i` when
//! `2 X_i > theta`.
//!
//! Every such graph is determined up to isomorphism by its *creation
//! sequence* `s_1, ..., s_n` of bits: reading left to right, a `1` adds a
//! dominating vertex (joined to everything already present) and a `0` adds an
//! isolated vertex. The sequence is extracted by peeling: repeatedly compare
//! the smallest and largest remaining weights against `theta`, emit a bit for
//! positions `n` down to `2`, and remove the max (bit 1) or the min (bit 0).
//! For the loopless variant the first bit is set to `s_2` by convention; with
//! self-loops, `s_1 = 1` iff the last remaining weight exceeds `theta / 2`.
//!
//! Grouping the sequence into maximal runs `1^{k_1} 0^{l_1} ... 1^{k_m}
//! 0^{l_m}` yields the [`BlockDecomposition`] that drives all spectral
//! computations: only `k_1` (leading) and `l_m` (trailing) may be empty, and
//! the loopless convention forces `k_1 = 0` or `k_1 >= 2`.

use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};

/// Whether the diagonal of the adjacency matrix is forced to zero or carries
/// self-loop indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelVariant {
    /// Simple graph: `A_ii = 0`.
    Loopless,
    /// Loop at `i` iff `2 X_i > theta`; `A_ii` is that indicator.
    SelfLoops,
}

impl ModelVariant {
    /// Smallest supported vertex count for the variant.
    pub fn min_n(self) -> usize {
        match self {
            ModelVariant::Loopless => 2,
            ModelVariant::SelfLoops => 1,
        }
    }
}

impl std::fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelVariant::Loopless => write!(f, "loopless"),
            ModelVariant::SelfLoops => write!(f, "self-loops"),
        }
    }
}

/// A realized threshold graph: weights, threshold, and variant.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdGraph {
    theta: f64,
    values: Vec<f64>,
    variant: ModelVariant,
}

impl ThresholdGraph {
    /// Builds a graph from explicit vertex weights.
    pub fn new(values: Vec<f64>, theta: f64, variant: ModelVariant) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidGraph(format!("threshold must be finite, got {theta}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGraph("vertex weights must be finite".into()));
        }
        if values.len() < variant.min_n() {
            return Err(Error::InvalidGraph(format!(
                "variant {variant} needs at least {} vertices, got {}",
                variant.min_n(),
                values.len()
            )));
        }
        Ok(Self { theta, values, variant })
    }

    /// Samples `n` i.i.d. weights from `spec` and builds the graph.
    pub fn sample(
        spec: &DistributionSpec,
        n: usize,
        theta: f64,
        variant: ModelVariant,
        seed: u64,
    ) -> Result<Self> {
        Self::new(spec.sample(n, seed)?, theta, variant)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Adjacency indicator for a vertex pair (0-based indices).
    ///
    /// Strictly `X_i + X_j > theta`; equality never produces an edge. The
    /// diagonal is 0 for [`ModelVariant::Loopless`] and the self-loop
    /// indicator `2 X_i > theta` otherwise.
    pub fn adjacency_entry(&self, i: usize, j: usize) -> Result<u8> {
        let n = self.n();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if i == j && self.variant == ModelVariant::Loopless {
            return Ok(0);
        }
        Ok((self.values[i] + self.values[j] > self.theta) as u8)
    }

    /// Extracts the creation sequence by peeling min/max weights.
    pub fn creation_sequence(&self) -> CreationSequence {
        self.creation_sequence_with_order().0
    }

    /// Like [`Self::creation_sequence`], but also returns the peel
    /// permutation: `order[p]` is the original index of the vertex at
    /// sequence position `p + 1`. Relabeling vertex `order[p]` to `p`
    /// maps this graph onto the graph materialized from the sequence.
    ///
    /// Ties are broken deterministically: weights are sorted by
    /// `(value, original index)` with a stable comparison, and the peel
    /// consumes that sorted order from both ends.
    pub fn creation_sequence_with_order(&self) -> (CreationSequence, Vec<usize>) {
        let n = self.n();
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]).then(a.cmp(&b)));

        let mut bits = vec![0u8; n];
        let mut order = vec![0usize; n];
        let (mut lo, mut hi) = (0usize, n - 1);
        for pos in (1..n).rev() {
            if self.values[sorted[lo]] + self.values[sorted[hi]] > self.theta {
                bits[pos] = 1;
                order[pos] = sorted[hi];
                hi -= 1;
            } else {
                bits[pos] = 0;
                order[pos] = sorted[lo];
                lo += 1;
            }
        }
        order[0] = sorted[lo];
        bits[0] = match self.variant {
            ModelVariant::Loopless => bits[1],
            ModelVariant::SelfLoops => (2.0 * self.values[sorted[lo]] > self.theta) as u8,
        };
        let sequence = CreationSequence { bits, variant: self.variant };
        debug_assert!(sequence.validate().is_ok());
        (sequence, order)
    }
}

/// A creation sequence of 0/1 bits plus the variant it was extracted under.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CreationSequence {
    bits: Vec<u8>,
    variant: ModelVariant,
}

impl CreationSequence {
    /// Builds a sequence from explicit bits, enforcing the variant's
    /// conventions (`s_1 = s_2` and `n >= 2` for loopless).
    pub fn new(bits: Vec<u8>, variant: ModelVariant) -> Result<Self> {
        let s = Self { bits, variant };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSequence("bits must be 0 or 1".into()));
        }
        if self.bits.len() < self.variant.min_n() {
            return Err(Error::InvalidSequence(format!(
                "variant {} needs at least {} bits, got {}",
                self.variant,
                self.variant.min_n(),
                self.bits.len()
            )));
        }
        if self.variant == ModelVariant::Loopless && self.bits[0] != self.bits[1] {
            return Err(Error::InvalidSequence(
                "loopless sequences must satisfy s_1 = s_2".into(),
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    /// Groups the bits into maximal runs `1^{k_1} 0^{l_1} ... 1^{k_m} 0^{l_m}`.
    pub fn decompose(&self) -> BlockDecomposition {
        let bits = &self.bits;
        let n = bits.len();
        let mut k = Vec::new();
        let mut l = Vec::new();
        let mut i = 0;

        let mut ones = 0u64;
        while i < n && bits[i] == 1 {
            ones += 1;
            i += 1;
        }
        k.push(ones);

        while i < n {
            let mut zeros = 0u64;
            while i < n && bits[i] == 0 {
                zeros += 1;
                i += 1;
            }
            l.push(zeros);
            if i == n {
                break;
            }
            let mut ones = 0u64;
            while i < n && bits[i] == 1 {
                ones += 1;
                i += 1;
            }
            k.push(ones);
        }
        if l.len() < k.len() {
            l.push(0); // sequence ended on a 1-run
        }

        let d = BlockDecomposition { k, l, variant: self.variant };
        debug_assert!(d.validate().is_ok());
        d
    }

    /// Materializes the graph encoded by the sequence, as an edge list over
    /// vertices `0..n` in sequence order. Each `1`-bit vertex is joined to
    /// every earlier vertex; for [`ModelVariant::SelfLoops`] it also carries
    /// a loop, emitted as `(v, v)`.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (v, &bit) in self.bits.iter().enumerate() {
            if bit == 1 {
                // Position 0 dominates nothing; its bit only matters for loops.
                edges.extend((0..v).map(|u| (u, v)));
                if self.variant == ModelVariant::SelfLoops {
                    edges.push((v, v));
                }
            }
        }
        edges
    }

    /// Vertices carrying a self-loop (empty for the loopless variant).
    pub fn loop_vertices(&self) -> Vec<usize> {
        match self.variant {
            ModelVariant::Loopless => Vec::new(),
            ModelVariant::SelfLoops => self
                .bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(v, _)| v)
                .collect(),
        }
    }
}

/// Run lengths of a creation sequence: `m` alternating blocks of ones
/// (`k_i`) and zeros (`l_i`).
///
/// Invariants: `k_2, ..., k_m >= 1` and `l_1, ..., l_{m-1} >= 1`; only the
/// leading `k_1` and trailing `l_m` may be zero. Loopless sequences satisfy
/// `k_1 = 0` (with `l_1 >= 2`) or `k_1 >= 2`; with self-loops `k_1 >= 1` is
/// allowed. `s_1` equals `1` iff `k_1 >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockDecomposition {
    k: Vec<u64>,
    l: Vec<u64>,
    variant: ModelVariant,
}

impl BlockDecomposition {
    /// Builds a decomposition from explicit run lengths, validating the
    /// structural invariants above.
    pub fn new(k: Vec<u64>, l: Vec<u64>, variant: ModelVariant) -> Result<Self> {
        let d = Self { k, l, variant };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let m = self.k.len();
        if m == 0 || self.l.len() != m {
            return Err(Error::InvalidDecomposition(format!(
                "need matching non-empty run vectors, got {} ones-runs and {} zeros-runs",
                m,
                self.l.len()
            )));
        }
        if self.k[1..].contains(&0) {
            return Err(Error::InvalidDecomposition(
                "interior ones-runs k_2 ... k_m must be non-empty".into(),
            ));
        }
        if self.l[..m - 1].contains(&0) {
            return Err(Error::InvalidDecomposition(
                "interior zeros-runs l_1 ... l_{m-1} must be non-empty".into(),
            ));
        }
        match self.variant {
            ModelVariant::Loopless => {
                if self.k[0] == 1 {
                    return Err(Error::InvalidDecomposition(
                        "loopless leading ones-run must be 0 or >= 2 (s_1 = s_2)".into(),
                    ));
                }
                if self.k[0] == 0 && self.l[0] < 2 {
                    return Err(Error::InvalidDecomposition(
                        "loopless leading zeros-run must have length >= 2 when s_1 = 0".into(),
                    ));
                }
            }
            ModelVariant::SelfLoops => {
                if self.k[0] == 0 && self.l[0] == 0 {
                    return Err(Error::InvalidDecomposition(
                        "decomposition encodes an empty sequence".into(),
                    ));
                }
            }
        }
        if (self.n() as usize) < self.variant.min_n() {
            return Err(Error::InvalidDecomposition(format!(
                "variant {} needs at least {} vertices",
                self.variant,
                self.variant.min_n()
            )));
        }
        Ok(())
    }

    /// Number of block pairs `m`.
    pub fn m(&self) -> usize {
        self.k.len()
    }

    /// Total vertex count `sum k_i + sum l_i`.
    pub fn n(&self) -> u64 {
        self.k.iter().sum::<u64>() + self.l.iter().sum::<u64>()
    }

    /// Ones-run lengths `k_1, ..., k_m`.
    pub fn k(&self) -> &[u64] {
        &self.k
    }

    /// Zeros-run lengths `l_1, ..., l_m`.
    pub fn l(&self) -> &[u64] {
        &self.l
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    /// First creation bit: 1 iff the leading ones-run is non-empty.
    pub fn s1(&self) -> u8 {
        (self.k[0] >= 1) as u8
    }

    /// Rebuilds the creation sequence `1^{k_1} 0^{l_1} ... 1^{k_m} 0^{l_m}`.
    pub fn expand(&self) -> CreationSequence {
        let mut bits = Vec::with_capacity(self.n() as usize);
        for i in 0..self.m() {
            bits.extend(std::iter::repeat_n(1u8, self.k[i] as usize));
            bits.extend(std::iter::repeat_n(0u8, self.l[i] as usize));
        }
        let s = CreationSequence { bits, variant: self.variant };
        debug_assert!(s.validate().is_ok());
        s
    }
}
