//! Exact spectra of threshold graphs through block quotients.
//!
//! The adjacency spectrum of a threshold graph on `n` vertices splits into
//! two parts determined by its block decomposition `k_1, l_1, ..., k_m, l_m`:
//!
//! * **Trivial atoms.** For the loopless variant the eigenvalue `-1` has
//!   multiplicity `sum k_i - (m-1) - s_1` and `0` has multiplicity
//!   `sum l_i - (m-1)`. With self-loops only `0` is trivial, with
//!   multiplicity `n - 2(m-1) - s_1`.
//! * **Quotient eigenvalues.** The remaining `J = 2(m-1) + s_1` eigenvalues
//!   are exactly the eigenvalues of a small quotient matrix indexed by the
//!   ones-blocks `k_m, ..., k_2` (plus `k_1` when `s_1 = 1`) interleaved with
//!   the zeros-blocks `l_{m-1}, ..., l_1`; see [`build_quotient`]. They are
//!   real, simple in practice, and never equal to a trivial atom.
//!
//! The quotient is not symmetric but is conjugate to a symmetric matrix via
//! the square roots of the block sizes, so its eigenvalues are computed with
//! a symmetric eigensolver ([`quotient_eigenvalues`]). The characteristic
//! determinant `det(Q - lambda I)` is available exactly at integer points
//! ([`charpoly_eval_exact`]) and in floating point elsewhere
//! ([`charpoly_eval`]).

use nalgebra::DMatrix;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BlockDecomposition, ModelVariant};

/// Relative tolerance for merging near-coincident atoms: two atoms at `a`
/// and `b` merge when `|a - b| <= MERGE_REL_TOL * max(1, |a|, |b|)`.
pub const MERGE_REL_TOL: f64 = 1e-9;

/// Multiplicities of the structurally forced eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialMultiplicities {
    /// Multiplicity of eigenvalue -1 (always 0 for the self-loop variant).
    pub minus_one: u64,
    /// Multiplicity of eigenvalue 0.
    pub zero: u64,
}

/// Multiplicities of -1 and 0 implied by the block structure.
pub fn trivial_multiplicities(d: &BlockDecomposition) -> TrivialMultiplicities {
    let m = d.m() as u64;
    let s1 = d.s1() as u64;
    let ones: u64 = d.k().iter().sum();
    let zeros: u64 = d.l().iter().sum();
    match d.variant() {
        ModelVariant::Loopless => TrivialMultiplicities {
            minus_one: ones - (m - 1) - s1,
            zero: zeros - (m - 1),
        },
        ModelVariant::SelfLoops => TrivialMultiplicities {
            minus_one: 0,
            zero: d.n() - 2 * (m - 1) - s1,
        },
    }
}

/// Number of non-trivial eigenvalues contributed by the quotient.
pub fn nontrivial_count(d: &BlockDecomposition) -> u64 {
    2 * (d.m() as u64 - 1) + d.s1() as u64
}

/// Which block a quotient row/column refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BasisBlock {
    /// Ones-run `k_{i+1}` (0-based index into `d.k()`).
    Ones(usize),
    /// Zeros-run `l_{i+1}` (0-based index into `d.l()`).
    Zeros(usize),
}

/// Quotient rows/columns in matrix order: `k_m, l_{m-1}, k_{m-1}, l_{m-2},
/// ..., l_1` and finally `k_1` when `s_1 = 1`.
fn basis_blocks(d: &BlockDecomposition) -> Vec<BasisBlock> {
    let m = d.m();
    let mut blocks = Vec::with_capacity(2 * (m - 1) + d.s1() as usize);
    for i in (2..=m).rev() {
        blocks.push(BasisBlock::Ones(i - 1));
        blocks.push(BasisBlock::Zeros(i - 2));
    }
    if d.s1() == 1 {
        blocks.push(BasisBlock::Ones(0));
    }
    blocks
}

/// The `J x J` integer quotient matrix of a block decomposition, together
/// with the size of the block behind each row.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    dim: usize,
    /// Row-major entries.
    entries: Vec<i64>,
    /// Vertex count of the block behind each row/column, in matrix order.
    block_sizes: Vec<u64>,
    variant: ModelVariant,
}

/// Builds the quotient matrix whose eigenvalues are the non-trivial part of
/// the spectrum.
///
/// Rows and columns follow the order `k_m, l_{m-1}, k_{m-1}, ..., l_1 [, k_1]`.
/// Writing `v_i` for a ones-block row and `w_i` for a zeros-block row, the
/// entries are
///
/// * column `v_i`: `k_i` in every ones-row (diagonal `k_i - 1` for the
///   loopless variant, `k_i` with self-loops) and `k_i` in zeros-rows `w_j`
///   with `j <= i - 1`, else 0;
/// * column `w_i`: `l_i` in ones-rows `v_j` with `j >= i + 1`, else 0.
///
/// The leading `k_1 = 0` block and the trailing `l_m` block contribute no
/// rows: isolated trailing vertices lie entirely in the kernel.
pub fn build_quotient(d: &BlockDecomposition) -> QuotientMatrix {
    let blocks = basis_blocks(d);
    let dim = blocks.len();
    let k = d.k();
    let l = d.l();
    let diagonal_shift = match d.variant() {
        ModelVariant::Loopless => 1,
        ModelVariant::SelfLoops => 0,
    };

    let mut entries = vec![0i64; dim * dim];
    for (r, &row) in blocks.iter().enumerate() {
        for (c, &col) in blocks.iter().enumerate() {
            entries[r * dim + c] = match (row, col) {
                (BasisBlock::Ones(rj), BasisBlock::Ones(ci)) => {
                    let base = k[ci] as i64;
                    if rj == ci {
                        base - diagonal_shift
                    } else {
                        base
                    }
                }
                (BasisBlock::Zeros(rj), BasisBlock::Ones(ci)) => {
                    if rj < ci {
                        k[ci] as i64
                    } else {
                        0
                    }
                }
                (BasisBlock::Ones(rj), BasisBlock::Zeros(ci)) => {
                    if rj > ci {
                        l[ci] as i64
                    } else {
                        0
                    }
                }
                (BasisBlock::Zeros(_), BasisBlock::Zeros(_)) => 0,
            };
        }
    }

    let block_sizes = blocks
        .iter()
        .map(|b| match *b {
            BasisBlock::Ones(i) => k[i],
            BasisBlock::Zeros(i) => l[i],
        })
        .collect();

    QuotientMatrix { dim, entries, block_sizes, variant: d.variant() }
}

impl QuotientMatrix {
    /// Matrix dimension `J`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    /// Vertex counts of the blocks behind each row, in matrix order.
    pub fn block_sizes(&self) -> &[u64] {
        &self.block_sizes
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    /// The entries as a dense float matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| self.entry(r, c) as f64)
    }

    /// Conjugates the quotient into symmetric form.
    ///
    /// With `D = diag(block sizes)`, the matrix `D^{1/2} Q D^{-1/2}` is
    /// symmetric because `d_r Q[r][c] = d_c Q[c][r]` holds exactly in the
    /// integers; residual floating-point asymmetry is averaged away.
    pub fn symmetrized(&self) -> DMatrix<f64> {
        let sqrt_sizes: Vec<f64> = self.block_sizes.iter().map(|&s| (s as f64).sqrt()).collect();
        let mut sym = DMatrix::from_fn(self.dim, self.dim, |r, c| {
            self.entry(r, c) as f64 * sqrt_sizes[r] / sqrt_sizes[c]
        });
        for r in 0..self.dim {
            for c in 0..r {
                let avg = 0.5 * (sym[(r, c)] + sym[(c, r)]);
                sym[(r, c)] = avg;
                sym[(c, r)] = avg;
            }
        }
        sym
    }
}

/// Eigenvalues of the quotient matrix, sorted ascending.
///
/// Computed on the symmetrized conjugate with a symmetric eigensolver, so
/// the results are guaranteed real.
pub fn quotient_eigenvalues(q: &QuotientMatrix) -> Vec<f64> {
    if q.dim == 0 {
        return Vec::new();
    }
    let mut eigenvalues: Vec<f64> = q.symmetrized().symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    eigenvalues
}

/// Characteristic determinant `det(Q - lambda I)` in floating point, via LU
/// with partial pivoting.
pub fn charpoly_eval(q: &QuotientMatrix, lambda: f64) -> f64 {
    if q.dim == 0 {
        return 1.0;
    }
    let mut a = q.to_dense();
    for i in 0..q.dim {
        a[(i, i)] -= lambda;
    }
    a.lu().determinant()
}

/// Characteristic determinant `det(Q - lambda I)` at an integer point,
/// evaluated exactly with fraction-free (Bareiss) elimination over big
/// integers.
pub fn charpoly_eval_exact(q: &QuotientMatrix, lambda: i64) -> BigInt {
    let dim = q.dim;
    if dim == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<BigInt> = q.entries.iter().map(|&e| BigInt::from(e)).collect();
    for i in 0..dim {
        a[i * dim + i] -= lambda;
    }

    let zero = BigInt::from(0);
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for p in 0..dim {
        if a[p * dim + p] == zero {
            match (p + 1..dim).find(|&r| a[r * dim + p] != zero) {
                Some(r) => {
                    for c in 0..dim {
                        a.swap(p * dim + c, r * dim + c);
                    }
                    sign = -sign;
                }
                None => return zero,
            }
        }
        for r in p + 1..dim {
            for c in p + 1..dim {
                let numerator =
                    &a[p * dim + p] * &a[r * dim + c] - &a[r * dim + p] * &a[p * dim + c];
                a[r * dim + c] = numerator / &prev; // exact by Bareiss' identity
            }
            a[r * dim + p] = zero.clone();
        }
        prev = a[p * dim + p].clone();
    }
    BigInt::from(sign) * &a[(dim - 1) * dim + (dim - 1)]
}

/// Weight carried by a spectral atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomWeight {
    /// Exact eigenvalue multiplicity; the atom's mass is `multiplicity / n`.
    Multiplicity(u64),
    /// Real-valued probability mass (mixture and limit distributions).
    Mass(f64),
}

/// A point mass of a spectral distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub value: f64,
    pub weight: AtomWeight,
}

/// A purely atomic spectral measure.
///
/// In *exact* mode every atom carries an integer multiplicity and the
/// weights are the rationals `multiplicity / n`; the multiplicities sum to
/// `n`. In *mixture* mode atoms carry real masses summing to 1 (used for
/// averaged and limiting spectra, where `n` records the model size the
/// mixture refers to). Atoms are kept sorted by value and atoms closer than
/// [`MERGE_REL_TOL`] (relative) are merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "DistributionJson", try_from = "DistributionJson")]
pub struct SpectralDistribution {
    n: u64,
    atoms: Vec<Atom>,
}

impl SpectralDistribution {
    /// Full spectrum of the threshold graph with the given block
    /// decomposition: trivial atoms plus quotient eigenvalues.
    ///
    /// Fails with [`Error::InternalConsistency`] if a quotient eigenvalue
    /// falls within merge tolerance of a trivial atom (the block structure
    /// guarantees separation, so that would indicate a bug) or if the
    /// multiplicities fail to sum to `n`.
    pub fn from_decomposition(d: &BlockDecomposition) -> Result<Self> {
        let n = d.n();
        let trivial = trivial_multiplicities(d);
        let quotient = build_quotient(d);
        let lambdas = quotient_eigenvalues(&quotient);

        for &lam in &lambdas {
            let guard = |trivial_value: f64| {
                let tol = MERGE_REL_TOL * lam.abs().max(1.0);
                if (lam - trivial_value).abs() <= tol {
                    return Err(Error::InternalConsistency(format!(
                        "quotient eigenvalue {lam} collides with trivial atom {trivial_value}"
                    )));
                }
                Ok(())
            };
            guard(0.0)?;
            if d.variant() == ModelVariant::Loopless {
                guard(-1.0)?;
            }
        }

        let mut atoms: Vec<(f64, u64)> = Vec::with_capacity(lambdas.len() + 2);
        if trivial.minus_one > 0 {
            atoms.push((-1.0, trivial.minus_one));
        }
        if trivial.zero > 0 {
            atoms.push((0.0, trivial.zero));
        }
        atoms.extend(lambdas.into_iter().map(|lam| (lam, 1)));
        let dist = Self::from_exact_atoms(n, atoms)?;
        if dist.eigenvalue_count() != n {
            return Err(Error::InternalConsistency(format!(
                "multiplicities sum to {}, expected n = {n}",
                dist.eigenvalue_count()
            )));
        }
        Ok(dist)
    }

    /// Assembles an exact-mode distribution from `(value, multiplicity)`
    /// pairs, merging near-coincident values and dropping zero
    /// multiplicities.
    pub fn from_exact_atoms(n: u64, atoms: Vec<(f64, u64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("spectral distribution needs n >= 1".into()));
        }
        let merged = merge_sorted_atoms(
            atoms.into_iter().filter(|&(_, m)| m > 0).collect(),
            |a, b| a + b,
            |&m| m as f64,
        );
        Ok(Self {
            n,
            atoms: merged
                .into_iter()
                .map(|(value, m)| Atom { value, weight: AtomWeight::Multiplicity(m) })
                .collect(),
        })
    }

    /// Assembles a mixture-mode distribution from `(value, mass)` pairs,
    /// merging near-coincident values and dropping zero masses.
    ///
    /// Individual input masses may be negative as long as merging cancels
    /// them (closed-form mean spectra produce such terms); after merging,
    /// every mass must be non-negative within `1e-12` and the total must be
    /// 1 within `1e-12`.
    pub fn from_mixture_atoms(n: u64, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("spectral distribution needs n >= 1".into()));
        }
        if atoms.iter().any(|&(_, w)| !w.is_finite()) {
            return Err(Error::InvalidConfig("mixture weights must be finite".into()));
        }
        let merged = merge_sorted_atoms(
            atoms.into_iter().filter(|&(_, w)| w != 0.0).collect(),
            |a, b| a + b,
            |&w| w,
        );
        let mut clean = Vec::with_capacity(merged.len());
        for (value, w) in merged {
            if w < -1e-12 {
                return Err(Error::InternalConsistency(format!(
                    "atom at {value} has negative mass {w} after merging"
                )));
            }
            if w > 0.0 {
                clean.push(Atom { value, weight: AtomWeight::Mass(w) });
            }
        }
        let dist = Self { n, atoms: clean };
        let mass = dist.total_mass();
        if (mass - 1.0).abs() > 1e-12 {
            return Err(Error::InternalConsistency(format!(
                "mixture mass {mass} differs from 1 beyond 1e-12"
            )));
        }
        Ok(dist)
    }

    /// Model size this spectrum refers to.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Atoms sorted by value.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// True when every atom carries an integer multiplicity.
    pub fn is_exact(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| matches!(a.weight, AtomWeight::Multiplicity(_)))
    }

    /// Probability mass of one atom.
    pub fn mass_of(&self, atom: &Atom) -> f64 {
        match atom.weight {
            AtomWeight::Multiplicity(m) => m as f64 / self.n as f64,
            AtomWeight::Mass(w) => w,
        }
    }

    /// Total mass (1 up to rounding for valid distributions).
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| self.mass_of(a)).sum()
    }

    /// Sum of multiplicities (exact mode); equals `n` for full spectra.
    pub fn eigenvalue_count(&self) -> u64 {
        self.atoms
            .iter()
            .map(|a| match a.weight {
                AtomWeight::Multiplicity(m) => m,
                AtomWeight::Mass(_) => 0,
            })
            .sum()
    }

    /// `p`-th moment `sum_i mass_i * value_i^p`.
    pub fn moment(&self, p: u32) -> f64 {
        self.atoms
            .iter()
            .map(|a| self.mass_of(a) * a.value.powi(p as i32))
            .sum()
    }

    /// The atom nearest to `x` within `tol`, if any.
    pub fn atom_near(&self, x: f64, tol: f64) -> Option<&Atom> {
        self.atoms
            .iter()
            .map(|a| (a, (a.value - x).abs()))
            .filter(|&(_, d)| d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(a, _)| a)
    }

    /// Probability mass within `tol` of `x` (0 when no atom is near).
    pub fn mass_near(&self, x: f64, tol: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|a| (a.value - x).abs() <= tol)
            .map(|a| self.mass_of(a))
            .sum()
    }

    /// The full eigenvalue list (exact mode), each value repeated with its
    /// multiplicity, sorted ascending.
    pub fn expanded_eigenvalues(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n as usize);
        for a in &self.atoms {
            if let AtomWeight::Multiplicity(m) = a.weight {
                out.extend(std::iter::repeat_n(a.value, m as usize));
            }
        }
        out
    }

    /// Histogram of the measure with the given bin width over
    /// `[min - 0.5, max + 0.5)`; returns `(left, right, mass)` triples.
    pub fn histogram(&self, bin_width: f64) -> Vec<(f64, f64, f64)> {
        if self.atoms.is_empty() || bin_width <= 0.0 {
            return Vec::new();
        }
        let lo = self.atoms.first().unwrap().value - 0.5;
        let hi = self.atoms.last().unwrap().value + 0.5;
        let bins = ((hi - lo) / bin_width).ceil().max(1.0) as usize;
        let mut out: Vec<(f64, f64, f64)> = (0..bins)
            .map(|i| (lo + i as f64 * bin_width, lo + (i + 1) as f64 * bin_width, 0.0))
            .collect();
        for a in &self.atoms {
            let idx = (((a.value - lo) / bin_width) as usize).min(bins - 1);
            out[idx].2 += self.mass_of(a);
        }
        out
    }

    /// CSV rendering with a `value,multiplicity` header; mixture atoms
    /// write their real mass in the multiplicity column.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(if self.is_exact() {
            "value,multiplicity\n"
        } else {
            "value,weight\n"
        });
        for a in &self.atoms {
            match a.weight {
                AtomWeight::Multiplicity(m) => s.push_str(&format!("{},{}\n", a.value, m)),
                AtomWeight::Mass(w) => s.push_str(&format!("{},{}\n", a.value, w)),
            }
        }
        s
    }
}

/// Merges `(value, weight)` pairs whose values are within relative
/// tolerance, combining weights with `combine`; the merged value is the
/// weight-weighted mean. Returns pairs sorted by value.
fn merge_sorted_atoms<W: Copy>(
    mut raw: Vec<(f64, W)>,
    combine: fn(W, W) -> W,
    weight_as_f64: fn(&W) -> f64,
) -> Vec<(f64, W)> {
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, W)> = Vec::with_capacity(raw.len());
    for (value, weight) in raw {
        if let Some(last) = out.last_mut() {
            let tol = MERGE_REL_TOL * last.0.abs().max(value.abs()).max(1.0);
            if (value - last.0).abs() <= tol {
                // Exact coincidences keep their value; near-coincidences
                // move to the mass-weighted mean.
                let w_old = weight_as_f64(&last.1);
                let w_new = weight_as_f64(&weight);
                if value != last.0 && w_old + w_new > 0.0 {
                    last.0 = (last.0 * w_old + value * w_new) / (w_old + w_new);
                }
                last.1 = combine(last.1, weight);
                continue;
            }
        }
        out.push((value, weight));
    }
    out
}

/// Serialized shape: `{"n": ..., "atoms": [{"value": v, "mult": m}, ...]}`
/// in exact mode, with `"weight"` replacing `"mult"` for mixtures.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct DistributionJson {
    n: u64,
    atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum AtomJson {
    Exact { value: f64, mult: u64 },
    Mixture { value: f64, weight: f64 },
}

impl From<SpectralDistribution> for DistributionJson {
    fn from(d: SpectralDistribution) -> Self {
        DistributionJson {
            n: d.n,
            atoms: d
                .atoms
                .into_iter()
                .map(|a| match a.weight {
                    AtomWeight::Multiplicity(m) => AtomJson::Exact { value: a.value, mult: m },
                    AtomWeight::Mass(w) => AtomJson::Mixture { value: a.value, weight: w },
                })
                .collect(),
        }
    }
}

impl TryFrom<DistributionJson> for SpectralDistribution {
    type Error = Error;

    fn try_from(j: DistributionJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::InvalidConfig("spectral distribution needs n >= 1".into()));
        }
        let mut atoms = Vec::with_capacity(j.atoms.len());
        for a in j.atoms {
            atoms.push(match a {
                AtomJson::Exact { value, mult } => {
                    Atom { value, weight: AtomWeight::Multiplicity(mult) }
                }
                AtomJson::Mixture { value, weight } => {
                    Atom { value, weight: AtomWeight::Mass(weight) }
                }
            });
        }
        if atoms.windows(2).any(|w| w[0].value > w[1].value) {
            return Err(Error::InvalidConfig("atoms must be sorted by value".into()));
        }
        Ok(SpectralDistribution { n: j.n, atoms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CreationSequence;

    fn decomp(bits: &[u8], variant: ModelVariant) -> BlockDecomposition {
        CreationSequence::new(bits.to_vec(), variant).unwrap().decompose()
    }

    fn quotient_rows(q: &QuotientMatrix) -> Vec<Vec<i64>> {
        (0..q.dim())
            .map(|r| (0..q.dim()).map(|c| q.entry(r, c)).collect())
            .collect()
    }

    #[test]
    fn complete_graph_quotient_is_scalar() {
        let d = decomp(&[1, 1, 1, 1], ModelVariant::Loopless);
        let q = build_quotient(&d);
        assert_eq!(quotient_rows(&q), vec![vec![3]]);
        let t = trivial_multiplicities(&d);
        assert_eq!((t.minus_one, t.zero), (3, 0));
        assert_eq!(nontrivial_count(&d), 1);
    }

    #[test]
    fn star_quotient_two_by_two() {
        let d = decomp(&[0, 0, 1], ModelVariant::Loopless);
        let q = build_quotient(&d);
        assert_eq!(quotient_rows(&q), vec![vec![0, 2], vec![1, 0]]);
        let t = trivial_multiplicities(&d);
        assert_eq!((t.minus_one, t.zero), (0, 1));
        let ev = quotient_eigenvalues(&q);
        let sqrt2 = 2.0f64.sqrt();
        assert!((ev[0] + sqrt2).abs() < 1e-12 && (ev[1] - sqrt2).abs() < 1e-12);
    }

    #[test]
    fn eight_vertex_quotient_matches_block_pattern() {
        // blocks k = (2,1,1), l = (2,1,1), s1 = 1 -> 5x5 staircase
        let d = decomp(&[1, 1, 0, 0, 1, 0, 1, 0], ModelVariant::Loopless);
        let q = build_quotient(&d);
        assert_eq!(
            quotient_rows(&q),
            vec![
                vec![0, 1, 1, 2, 2],
                vec![1, 0, 0, 0, 0],
                vec![1, 0, 0, 2, 2],
                vec![1, 0, 1, 0, 0],
                vec![1, 0, 1, 0, 1],
            ]
        );
        assert_eq!(q.block_sizes(), &[1, 1, 1, 2, 2]);
        let t = trivial_multiplicities(&d);
        assert_eq!((t.minus_one, t.zero), (1, 2));
        assert_eq!(nontrivial_count(&d), 5);
    }

    #[test]
    fn self_loop_diagonal_keeps_block_size() {
        let d = decomp(&[1, 1], ModelVariant::SelfLoops);
        let q = build_quotient(&d);
        assert_eq!(quotient_rows(&q), vec![vec![2]]);
        let t = trivial_multiplicities(&d);
        assert_eq!((t.minus_one, t.zero), (0, 1));
        let single = decomp(&[1], ModelVariant::SelfLoops);
        assert_eq!(quotient_rows(&build_quotient(&single)), vec![vec![1]]);
    }

    #[test]
    fn null_graph_has_empty_quotient() {
        let d = decomp(&[0, 0, 0], ModelVariant::Loopless);
        let q = build_quotient(&d);
        assert_eq!(q.dim(), 0);
        assert!(quotient_eigenvalues(&q).is_empty());
        assert_eq!(charpoly_eval(&q, -1.0), 1.0);
        assert_eq!(charpoly_eval_exact(&q, -1), BigInt::from(1));
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        assert_eq!(dist.atoms().len(), 1);
        assert_eq!(dist.mass_near(0.0, 1e-12), 1.0);
    }

    #[test]
    fn charpoly_known_values() {
        // Scalar quotient [n-1]: det([n-1] - lambda) at -1 is n, at 0 is n-1.
        let d = decomp(&[1, 1, 1, 1, 1], ModelVariant::Loopless);
        let q = build_quotient(&d);
        assert_eq!(charpoly_eval_exact(&q, -1), BigInt::from(5));
        assert_eq!(charpoly_eval_exact(&q, 0), BigInt::from(4));
        assert!((charpoly_eval(&q, -1.0) - 5.0).abs() < 1e-12);

        // 8-vertex example: |det| at -1 is k1 k2 k3 l1 l2 = 4, at 0 is
        // (k1 - 1) k2 k3 l1 l2 = 2; m = 3 so the determinant sign is +1.
        let d = decomp(&[1, 1, 0, 0, 1, 0, 1, 0], ModelVariant::Loopless);
        let q = build_quotient(&d);
        assert_eq!(charpoly_eval_exact(&q, -1), BigInt::from(4));
        assert_eq!(charpoly_eval_exact(&q, 0), BigInt::from(2));
    }

    #[test]
    fn exact_and_float_charpoly_agree() {
        let d = decomp(&[1, 1, 0, 1, 0, 0, 1, 1, 0], ModelVariant::Loopless);
        let q = build_quotient(&d);
        for lam in [-3, -1, 0, 2, 7] {
            let exact: BigInt = charpoly_eval_exact(&q, lam);
            let float = charpoly_eval(&q, lam as f64);
            let exact_f64 = format!("{exact}").parse::<f64>().unwrap();
            assert!(
                (float - exact_f64).abs() <= 1e-9 * exact_f64.abs().max(1.0),
                "lambda {lam}: exact {exact} vs float {float}"
            );
        }
    }

    #[test]
    fn spectrum_of_two_vertex_graphs() {
        let d = decomp(&[1, 1], ModelVariant::Loopless);
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        assert_eq!(dist.mass_near(-1.0, 1e-12), 0.5);
        assert_eq!(dist.mass_near(1.0, 1e-12), 0.5);

        let d = decomp(&[1, 1], ModelVariant::SelfLoops);
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        assert_eq!(dist.mass_near(0.0, 1e-12), 0.5);
        assert_eq!(dist.mass_near(2.0, 1e-12), 0.5);
    }

    #[test]
    fn moments_count_edges() {
        // 8-vertex example: 11 edges, so the second moment is 2*11/8.
        let d = decomp(&[1, 1, 0, 0, 1, 0, 1, 0], ModelVariant::Loopless);
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        assert!((dist.moment(1) - 0.0).abs() < 1e-9);
        assert!((dist.moment(2) - 2.0 * 11.0 / 8.0).abs() < 1e-9);
        assert_eq!(dist.eigenvalue_count(), 8);
        assert!((dist.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn merging_combines_exact_duplicates() {
        let dist =
            SpectralDistribution::from_exact_atoms(4, vec![(1.0, 1), (1.0, 2), (3.0, 1)]).unwrap();
        assert_eq!(dist.atoms().len(), 2);
        assert_eq!(dist.mass_near(1.0, 1e-12), 0.75);
    }

    #[test]
    fn histogram_covers_support() {
        let d = decomp(&[1, 1, 0, 0, 1, 0, 1, 0], ModelVariant::Loopless);
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        let bins = dist.histogram(0.1);
        let total: f64 = bins.iter().map(|b| b.2).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(bins.first().unwrap().0 <= -1.5);
    }

    #[test]
    fn json_round_trip() {
        let d = decomp(&[0, 0, 1], ModelVariant::Loopless);
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        let json = serde_json::to_string(&dist).unwrap();
        assert!(json.contains("\"mult\""), "{json}");
        let back: SpectralDistribution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dist);

        let mixture =
            SpectralDistribution::from_mixture_atoms(3, vec![(-1.0, 0.25), (0.0, 0.75)]).unwrap();
        let json = serde_json::to_string(&mixture).unwrap();
        assert!(json.contains("\"weight\""), "{json}");
        let back: SpectralDistribution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mixture);
    }

    #[test]
    fn csv_layout() {
        let d = decomp(&[1, 1], ModelVariant::Loopless);
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        assert_eq!(dist.to_csv(), "value,multiplicity\n-1,1\n1,1\n");

        let mixture =
            SpectralDistribution::from_mixture_atoms(1, vec![(-1.0, 0.25), (0.0, 0.75)]).unwrap();
        assert_eq!(mixture.to_csv(), "value,weight\n-1,0.25\n0,0.75\n");
    }
}
