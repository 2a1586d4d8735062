//! Monte Carlo verification of the limiting behaviour of spectral atom
//! weights.
//!
//! For continuous weight distributions that are symmetric around
//! `theta / 2`, the creation-sequence bits behave like fair coin flips (the
//! self-loop sequence is i.i.d.; the loopless one repeats its first bit).
//! Consequently the trivial atom weights satisfy strong laws and central
//! limit theorems:
//!
//! * loopless: `C_n(-1)/n -> 1/4` and `C_n(0)/n -> 1/4` almost surely, with
//!   `sqrt(n) (C_n/n - 1/4)` asymptotically normal,
//! * self-loops: `C~_n(0)/n -> 1/2` almost surely, with
//!   `sqrt(n) (C~_n(0)/n - 1/2) => N(0, 1/4)`,
//! * expectations are exact at every `n`: `E[C_n(-1)] = n/4`,
//!   `E[C_n(0)] = n/4 + 1/2`, `E[C~_n(0)] = n/2`.
//!
//! For integer-valued weights supported on `{0, ..., 2m-1}` with threshold
//! `theta = 2m-1`, the block decomposition is (for large `n`, almost surely)
//! a deterministic function of the value histogram, and the spectral
//! distribution converges to a two-point measure; see
//! [`discrete_limit_check`].
//!
//! All experiments derive one independent substream per trial from the
//! master seed ([`crate::distributions::derive_stream_seed`]), run trials in
//! parallel, and aggregate in trial order, so reports are identical for
//! identical configurations regardless of thread scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::distributions::{derive_stream_seed, DistributionSpec};
use crate::error::{Error, Result};
use crate::model::{ModelVariant, ThresholdGraph};
use crate::spectrum::{nontrivial_count, trivial_multiplicities};

/// KS pass threshold is `KS_THRESHOLD_FACTOR / sqrt(trials)` (the ~0.001
/// significance level of the one-sample Kolmogorov-Smirnov statistic).
pub const KS_THRESHOLD_FACTOR: f64 = 1.95;

/// Sample means must land within this many standard errors of the limit.
pub const MEAN_BAND_SIGMAS: f64 = 4.0;

/// Expectation identities are checked within this many standard errors.
pub const EXPECTATION_BAND_SIGMAS: f64 = 5.0;

/// Asymptotic standard deviation used to normalize
/// `sqrt(n) (statistic - limit)` for the KS comparison against N(0, 1).
pub const COEFFICIENT_SIGMA: f64 = 0.5;

/// Configuration of a Monte Carlo experiment over sampled threshold graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCExperimentConfig {
    pub spec: DistributionSpec,
    pub theta: f64,
    pub variant: ModelVariant,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl MCExperimentConfig {
    fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        if !self.theta.is_finite() {
            return Err(Error::InvalidConfig(format!("threshold must be finite, got {}", self.theta)));
        }
        if self.n < self.variant.min_n() {
            return Err(Error::InvalidConfig(format!(
                "variant {} needs n >= {}, got {}",
                self.variant,
                self.variant.min_n(),
                self.n
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("need at least one trial".into()));
        }
        Ok(())
    }

    /// True when the weight law supports the coin-flip limit theorems:
    /// continuous and symmetric around `theta / 2`.
    pub fn supports_clt(&self) -> bool {
        self.spec.is_continuous() && self.spec.is_symmetric_around(self.theta / 2.0)
    }
}

/// Limit-theorem verdict attached to an [`MCReport`] when the configuration
/// supports it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltCheck {
    /// Almost-sure limit of the statistic.
    pub limit: f64,
    /// Asymptotic standard deviation of `sqrt(n) (statistic - limit)`.
    pub sigma: f64,
    /// Allowed deviation of the sample mean from the limit
    /// (`MEAN_BAND_SIGMAS * sigma / sqrt(n * trials)`).
    pub mean_tolerance: f64,
    pub mean_ok: bool,
    /// KS distance between the normalized per-trial values and N(0, 1).
    pub ks_distance: f64,
    /// `KS_THRESHOLD_FACTOR / sqrt(trials)`.
    pub ks_threshold: f64,
    pub ks_ok: bool,
    /// Sample variance of the normalized values (1 under the limiting
    /// normal; reported for diagnostics).
    pub normalized_variance: f64,
    pub pass: bool,
}

/// Per-statistic result of [`coefficient_trials`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCReport {
    /// Name of the statistic, e.g. `c_minus_one_over_n`.
    pub statistic: String,
    pub n: usize,
    pub trials: usize,
    /// Sample mean of the per-trial statistic.
    pub mean: f64,
    /// Unbiased sample variance of the per-trial statistic.
    pub sample_variance: f64,
    /// Raw per-trial values, in trial order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_trial: Vec<f64>,
    /// Populated when the configuration supports the limit theorems.
    pub clt: Option<CltCheck>,
}

impl MCReport {
    /// Overall verdict: true when no CLT applies or the CLT check passed.
    pub fn pass(&self) -> bool {
        self.clt.as_ref().is_none_or(|c| c.pass)
    }
}

/// Samples `trials` graphs and reports the trivial-atom weight statistics:
/// `C_n(-1)/n` and `C_n(0)/n` for loopless graphs, `C~_n(0)/n` with
/// self-loops.
///
/// When the configuration supports the coin-flip limit theorems (continuous
/// weights symmetric around `theta / 2`), each report carries a [`CltCheck`]
/// comparing the sample mean against the almost-sure limit and the
/// normalized values against the limiting normal. For other weight laws the
/// statistics are still reported, with `clt = None`.
pub fn coefficient_trials(cfg: &MCExperimentConfig) -> Result<Vec<MCReport>> {
    cfg.validate()?;
    let nf = cfg.n as f64;
    let rows: Vec<(f64, f64)> = run_trials(cfg, |g| {
        let t = trivial_multiplicities(&g.creation_sequence().decompose());
        (t.minus_one as f64 / nf, t.zero as f64 / nf)
    })?;

    let clt_limits: Option<Vec<f64>> = cfg.supports_clt().then(|| match cfg.variant {
        ModelVariant::Loopless => vec![0.25, 0.25],
        ModelVariant::SelfLoops => vec![0.5],
    });
    let (names, columns): (Vec<&str>, Vec<Vec<f64>>) = match cfg.variant {
        ModelVariant::Loopless => (
            vec!["c_minus_one_over_n", "c_zero_over_n"],
            vec![
                rows.iter().map(|r| r.0).collect(),
                rows.iter().map(|r| r.1).collect(),
            ],
        ),
        ModelVariant::SelfLoops => {
            (vec!["c_zero_over_n"], vec![rows.iter().map(|r| r.1).collect()])
        }
    };

    Ok(names
        .into_iter()
        .zip(columns)
        .enumerate()
        .map(|(i, (name, values))| {
            let limit = clt_limits.as_ref().map(|l| l[i]);
            build_report(name, cfg, values, limit)
        })
        .collect())
}

/// Result of one expectation identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationCheck {
    pub statistic: String,
    /// Exact expectation implied by the model.
    pub expected: f64,
    pub observed_mean: f64,
    /// Allowed deviation: `EXPECTATION_BAND_SIGMAS` standard errors, using
    /// the asymptotic per-trial deviation `sqrt(n) * COEFFICIENT_SIGMA`.
    pub band: f64,
    pub pass: bool,
}

/// Result of [`expectation_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub n: usize,
    pub trials: usize,
    pub checks: Vec<ExpectationCheck>,
    pub pass: bool,
}

/// Verifies the exact finite-`n` expectations of the raw atom counts:
/// `E[C_n(-1)] = n/4` and `E[C_n(0)] = n/4 + 1/2` (loopless),
/// `E[C~_n(0)] = n/2` (self-loops).
///
/// Requires a continuous weight law symmetric around `theta / 2`; the
/// identities do not hold otherwise.
pub fn expectation_check(cfg: &MCExperimentConfig) -> Result<ExpectationReport> {
    cfg.validate()?;
    if !cfg.supports_clt() {
        return Err(Error::InvalidConfig(
            "expectation identities need a continuous weight law symmetric around theta/2".into(),
        ));
    }
    let rows: Vec<(f64, f64)> = run_trials(cfg, |g| {
        let t = trivial_multiplicities(&g.creation_sequence().decompose());
        (t.minus_one as f64, t.zero as f64)
    })?;
    let nf = cfg.n as f64;
    let band = EXPECTATION_BAND_SIGMAS * (nf.sqrt() * COEFFICIENT_SIGMA)
        / (cfg.trials as f64).sqrt();

    let mut targets: Vec<(&str, f64, Vec<f64>)> = Vec::new();
    match cfg.variant {
        ModelVariant::Loopless => {
            targets.push(("c_minus_one", nf / 4.0, rows.iter().map(|r| r.0).collect()));
            targets.push(("c_zero", nf / 4.0 + 0.5, rows.iter().map(|r| r.1).collect()));
        }
        ModelVariant::SelfLoops => {
            targets.push(("c_zero", nf / 2.0, rows.iter().map(|r| r.1).collect()));
        }
    }

    let checks: Vec<ExpectationCheck> = targets
        .into_iter()
        .map(|(name, expected, values)| {
            let observed_mean = mean(&values);
            let pass = (observed_mean - expected).abs() <= band;
            ExpectationCheck { statistic: name.into(), expected, observed_mean, band, pass }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(ExpectationReport { n: cfg.n, trials: cfg.trials, checks, pass })
}

/// Result of [`bernoulli_representation_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliReport {
    pub n: usize,
    pub trials: usize,
    /// Largest deviation of a per-position one-frequency from 1/2
    /// (self-loop sequences, all positions).
    pub max_frequency_deviation: f64,
    /// Allowed frequency deviation: `MEAN_BAND_SIGMAS * 0.5 / sqrt(trials)`.
    pub frequency_band: f64,
    /// Sample correlation between adjacent bits, pooled over positions.
    pub lag1_correlation: f64,
    /// Allowed correlation magnitude: `MEAN_BAND_SIGMAS / sqrt(trials)`.
    pub lag1_band: f64,
    /// Whether every loopless sequence satisfied `s_1 = s_2`.
    pub loopless_first_bits_equal: bool,
    pub pass: bool,
}

/// Empirically verifies the coin-flip representation of creation sequences
/// for continuous symmetric weights (uniform on `[-1, 1)`, `theta = 0`):
/// the self-loop sequence is i.i.d. Bernoulli(1/2) (per-position frequencies
/// and vanishing lag-1 correlation), and the loopless sequence duplicates
/// its first bit.
pub fn bernoulli_representation_check(n: usize, trials: usize, seed: u64) -> Result<BernoulliReport> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("need n >= 2, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    let spec = DistributionSpec::Uniform { a: -1.0, b: 1.0 };
    let theta = 0.0;

    let per_trial: Vec<(Vec<u8>, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_stream_seed(seed, t as u64);
            let values = spec.sample(n, trial_seed)?;
            let looped =
                ThresholdGraph::new(values.clone(), theta, ModelVariant::SelfLoops)?;
            let loopless = ThresholdGraph::new(values, theta, ModelVariant::Loopless)?;
            let bits = looped.creation_sequence().bits().to_vec();
            let ll = loopless.creation_sequence();
            let first_equal = ll.bits()[0] == ll.bits()[1];
            Ok((bits, first_equal))
        })
        .collect::<Result<_>>()?;

    let mut ones = vec![0u64; n];
    let mut first_bits_equal = true;
    // Pooled lag-1 sums over all (position, position + 1) pairs.
    let (mut s_x, mut s_y, mut s_xy) = (0u64, 0u64, 0u64);
    for (bits, first_equal) in &per_trial {
        first_bits_equal &= first_equal;
        for (i, &b) in bits.iter().enumerate() {
            ones[i] += b as u64;
        }
        for w in bits.windows(2) {
            s_x += w[0] as u64;
            s_y += w[1] as u64;
            s_xy += (w[0] & w[1]) as u64;
        }
    }

    let t = trials as f64;
    let max_frequency_deviation = ones
        .iter()
        .map(|&c| (c as f64 / t - 0.5).abs())
        .fold(0.0, f64::max);
    let frequency_band = MEAN_BAND_SIGMAS * 0.5 / t.sqrt();

    let pairs = (trials * (n - 1)) as f64;
    let (sx, sy, sxy) = (s_x as f64, s_y as f64, s_xy as f64);
    let cov = pairs * sxy - sx * sy;
    let var_x = pairs * sx - sx * sx;
    let var_y = pairs * sy - sy * sy;
    let lag1_correlation = if var_x > 0.0 && var_y > 0.0 {
        cov / (var_x * var_y).sqrt()
    } else {
        0.0
    };
    let lag1_band = MEAN_BAND_SIGMAS / t.sqrt();

    let pass = first_bits_equal
        && max_frequency_deviation <= frequency_band
        && lag1_correlation.abs() <= lag1_band;
    Ok(BernoulliReport {
        n,
        trials,
        max_frequency_deviation,
        frequency_band,
        lag1_correlation,
        lag1_band,
        loopless_first_bits_equal: first_bits_equal,
        pass,
    })
}

/// Result of [`discrete_limit_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteLimitReport {
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub theta: f64,
    /// Trials on which the histogram condition held and the block identity
    /// was checked exactly.
    pub identity_trials_verified: usize,
    /// Trials skipped because a required value class was empty (or the top
    /// class was a singleton, where the loopless `s_1 = s_2` convention
    /// shifts the leading run).
    pub identity_trials_skipped: usize,
    /// Trials where the identity condition held but the decomposition
    /// disagreed with the histogram prediction — always 0 for a correct
    /// implementation.
    pub identity_failures: usize,
    /// Limiting atom masses: `1 - F(m-1)` at `-1` and `F(m-1)` at `0`.
    pub minus_one_target: f64,
    pub zero_target: f64,
    /// Mean loopless atom weights across trials.
    pub loopless_minus_one_mean: f64,
    pub loopless_zero_mean: f64,
    /// Largest per-trial deviation of a loopless atom weight from its
    /// target.
    pub max_atom_deviation: f64,
    /// Allowed per-trial atom deviation.
    pub atom_band: f64,
    /// Smallest per-trial self-loop mass at 0.
    pub selfloops_zero_mass_min: f64,
    /// Largest per-trial off-atom mass `J / n`, and its structural bound
    /// `(2(m-1) + 1) / n`.
    pub max_off_mass: f64,
    pub off_mass_bound: f64,
    pub pass: bool,
}

/// Sharp per-trial band for the discrete-limit atom weights.
pub const DISCRETE_ATOM_BAND: f64 = 0.02;

/// Verifies the integer-weight regime at `theta = 2m - 1`.
///
/// `spec` must be a discrete pmf on integer values inside `{0, ..., 2m-1}`.
/// Whenever every class `1..=2m-1` is populated (and the class `m` has at
/// least two members, as the loopless first-bit convention requires), the
/// block decomposition is checked *exactly* against the value histogram:
/// `l_i = #\{X = m - i\}` and `k_i = #\{X = m - 1 + i\}`. Atom weights are
/// compared against the limit `(1 - F(m-1)) delta_{-1} + F(m-1) delta_0`
/// within [`DISCRETE_ATOM_BAND`], and the self-loop spectrum is checked to
/// collapse onto 0 with off-mass at most `(2(m-1) + 1) / n`.
pub fn discrete_limit_check(
    spec: &DistributionSpec,
    m: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<DiscreteLimitReport> {
    if m == 0 {
        return Err(Error::InvalidConfig("need m >= 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidConfig(format!("need n >= 2, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    spec.validate()?;
    let classes = 2 * m; // value classes 0 ..= 2m - 1
    let DistributionSpec::DiscretePmf { values, .. } = spec else {
        return Err(Error::InvalidConfig(
            "discrete limit check needs a discrete pmf weight law".into(),
        ));
    };
    for &v in values {
        if v.fract() != 0.0 || v < 0.0 || v > (classes - 1) as f64 {
            return Err(Error::InvalidConfig(format!(
                "discrete limit check needs integer values in 0..={}, got {v}",
                classes - 1
            )));
        }
    }
    let theta = (classes - 1) as f64;

    struct TrialRow {
        identity: Option<bool>, // None = skipped
        w_minus_one: f64,
        w_zero: f64,
        selfloops_zero: f64,
        off_mass: f64,
    }

    let rows: Vec<TrialRow> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_stream_seed(seed, t as u64);
            let sampled = spec.sample(n, trial_seed)?;
            let mut counts = vec![0u64; classes];
            for &v in &sampled {
                counts[v as usize] += 1;
            }

            let loopless =
                ThresholdGraph::new(sampled.clone(), theta, ModelVariant::Loopless)?;
            let d_loopless = loopless.creation_sequence().decompose();
            let looped = ThresholdGraph::new(sampled, theta, ModelVariant::SelfLoops)?;
            let d_looped = looped.creation_sequence().decompose();

            let condition = (1..classes).all(|c| counts[c] >= 1) && counts[m] >= 2;
            let identity = condition.then(|| {
                let expected_k: Vec<u64> = (m..classes).map(|c| counts[c]).collect();
                let expected_l: Vec<u64> = (0..m).rev().map(|c| counts[c]).collect();
                d_loopless.k() == expected_k.as_slice()
                    && d_loopless.l() == expected_l.as_slice()
                    && d_looped.k() == expected_k.as_slice()
                    && d_looped.l() == expected_l.as_slice()
            });

            let nf = n as f64;
            let t_loopless = trivial_multiplicities(&d_loopless);
            let t_looped = trivial_multiplicities(&d_looped);
            Ok(TrialRow {
                identity,
                w_minus_one: t_loopless.minus_one as f64 / nf,
                w_zero: t_loopless.zero as f64 / nf,
                selfloops_zero: t_looped.zero as f64 / nf,
                off_mass: (nontrivial_count(&d_loopless) as f64 / nf)
                    .max(nontrivial_count(&d_looped) as f64 / nf),
            })
        })
        .collect::<Result<_>>()?;

    let f_m1 = spec.cdf((m - 1) as f64);
    let minus_one_target = 1.0 - f_m1;
    let zero_target = f_m1;

    let mut verified = 0;
    let mut skipped = 0;
    let mut failures = 0;
    let mut max_atom_deviation = 0.0f64;
    let mut selfloops_zero_mass_min = f64::INFINITY;
    let mut max_off_mass = 0.0f64;
    for row in &rows {
        match row.identity {
            Some(true) => verified += 1,
            Some(false) => failures += 1,
            None => skipped += 1,
        }
        max_atom_deviation = max_atom_deviation
            .max((row.w_minus_one - minus_one_target).abs())
            .max((row.w_zero - zero_target).abs());
        selfloops_zero_mass_min = selfloops_zero_mass_min.min(row.selfloops_zero);
        max_off_mass = max_off_mass.max(row.off_mass);
    }

    let off_mass_bound = (2 * (m - 1) + 1) as f64 / n as f64;
    let pass = failures == 0
        && max_atom_deviation <= DISCRETE_ATOM_BAND
        && max_off_mass <= off_mass_bound + 1e-15;
    Ok(DiscreteLimitReport {
        m,
        n,
        trials,
        theta,
        identity_trials_verified: verified,
        identity_trials_skipped: skipped,
        identity_failures: failures,
        minus_one_target,
        zero_target,
        loopless_minus_one_mean: mean(&rows.iter().map(|r| r.w_minus_one).collect::<Vec<_>>()),
        loopless_zero_mean: mean(&rows.iter().map(|r| r.w_zero).collect::<Vec<_>>()),
        max_atom_deviation,
        atom_band: DISCRETE_ATOM_BAND,
        selfloops_zero_mass_min,
        max_off_mass,
        off_mass_bound,
        pass,
    })
}

/// Runs the configured number of trials in parallel, mapping each sampled
/// graph through `stat`; results are returned in trial order.
fn run_trials<T: Send>(
    cfg: &MCExperimentConfig,
    stat: impl Fn(&ThresholdGraph) -> T + Sync,
) -> Result<Vec<T>> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_stream_seed(cfg.seed, t as u64);
            let g = ThresholdGraph::sample(&cfg.spec, cfg.n, cfg.theta, cfg.variant, trial_seed)?;
            Ok(stat(&g))
        })
        .collect()
}

fn build_report(
    statistic: &str,
    cfg: &MCExperimentConfig,
    per_trial: Vec<f64>,
    limit: Option<f64>,
) -> MCReport {
    let mean_value = mean(&per_trial);
    let sample_variance = variance(&per_trial, mean_value);
    let clt = limit.map(|limit| {
        let nf = cfg.n as f64;
        let t = cfg.trials as f64;
        let normalized: Vec<f64> = per_trial
            .iter()
            .map(|x| nf.sqrt() * (x - limit) / COEFFICIENT_SIGMA)
            .collect();
        let nmean = mean(&normalized);
        let normalized_variance = variance(&normalized, nmean);
        let mean_tolerance = MEAN_BAND_SIGMAS * COEFFICIENT_SIGMA / (nf * t).sqrt();
        let mean_ok = (mean_value - limit).abs() <= mean_tolerance;
        let ks_distance = ks_distance_to_standard_normal(&normalized);
        let ks_threshold = KS_THRESHOLD_FACTOR / t.sqrt();
        let ks_ok = ks_distance < ks_threshold;
        CltCheck {
            limit,
            sigma: COEFFICIENT_SIGMA,
            mean_tolerance,
            mean_ok,
            ks_distance,
            ks_threshold,
            ks_ok,
            normalized_variance,
            pass: mean_ok && ks_ok,
        }
    });
    MCReport {
        statistic: statistic.into(),
        n: cfg.n,
        trials: cfg.trials,
        mean: mean_value,
        sample_variance,
        per_trial,
        clt,
    }
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

fn variance(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64
}

/// One-sample Kolmogorov-Smirnov distance between the empirical
/// distribution of `samples` and the standard normal.
fn ks_distance_to_standard_normal(samples: &[f64]) -> f64 {
    let normal = Normal::standard();
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let phi = normal.cdf(z);
            let upper = (i as f64 + 1.0) / n - phi;
            let lower = phi - i as f64 / n;
            upper.max(lower)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_cfg(variant: ModelVariant, n: usize, trials: usize) -> MCExperimentConfig {
        MCExperimentConfig {
            spec: DistributionSpec::Uniform { a: -1.0, b: 1.0 },
            theta: 0.0,
            variant,
            n,
            trials,
            seed: 1234,
        }
    }

    #[test]
    fn degenerate_complete_graphs_have_exact_coefficients() {
        let cfg = MCExperimentConfig {
            spec: DistributionSpec::Bernoulli { p: 1.0 },
            theta: 0.5,
            variant: ModelVariant::Loopless,
            n: 50,
            trials: 4,
            seed: 9,
        };
        let reports = coefficient_trials(&cfg).unwrap();
        assert_eq!(reports.len(), 2);
        let minus_one = &reports[0];
        assert!(minus_one.clt.is_none(), "degenerate spec has no CLT claim");
        // Every graph is complete: C_n(-1) = n - 1.
        assert!((minus_one.mean - (1.0 - 1.0 / 50.0)).abs() < 1e-15);
        assert_eq!(minus_one.sample_variance, 0.0);
        assert!((reports[1].mean - 0.0).abs() < 1e-15);
    }

    #[test]
    fn loopless_coefficients_approach_one_quarter() {
        let cfg = uniform_cfg(ModelVariant::Loopless, 400, 200);
        let reports = coefficient_trials(&cfg).unwrap();
        for report in &reports {
            let clt = report.clt.as_ref().expect("uniform around theta/2 supports CLT");
            assert!(clt.mean_ok, "{report:?}");
            assert!((report.mean - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn selfloops_coefficient_approaches_one_half() {
        let cfg = uniform_cfg(ModelVariant::SelfLoops, 400, 200);
        let reports = coefficient_trials(&cfg).unwrap();
        assert_eq!(reports.len(), 1);
        let clt = reports[0].clt.as_ref().unwrap();
        assert!(clt.pass, "{:?}", reports[0]);
        // The self-loop statistic obeys the stated normal limit exactly, so
        // the diagnostic variance should sit near 1.
        assert!((clt.normalized_variance - 1.0).abs() < 0.35, "{clt:?}");
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = uniform_cfg(ModelVariant::Loopless, 64, 32);
        let a = coefficient_trials(&cfg).unwrap();
        let b = coefficient_trials(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn expectation_identities_hold() {
        let cfg = uniform_cfg(ModelVariant::Loopless, 256, 400);
        let report = expectation_check(&cfg).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.checks.len(), 2);
        assert!((report.checks[0].expected - 64.0).abs() < 1e-12);
        assert!((report.checks[1].expected - 64.5).abs() < 1e-12);

        let cfg = uniform_cfg(ModelVariant::SelfLoops, 256, 400);
        let report = expectation_check(&cfg).unwrap();
        assert!(report.pass, "{report:?}");
        assert!((report.checks[0].expected - 128.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_check_rejects_asymmetric_spec() {
        let mut cfg = uniform_cfg(ModelVariant::Loopless, 64, 8);
        cfg.theta = 0.7; // uniform(-1,1) is not symmetric around 0.35
        assert!(matches!(expectation_check(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn bernoulli_representation_looks_iid() {
        let report = bernoulli_representation_check(16, 4000, 77).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.loopless_first_bits_equal);
        assert!(report.max_frequency_deviation <= report.frequency_band);
        assert!(report.lag1_correlation.abs() <= report.lag1_band);
    }

    #[test]
    fn three_vertex_sequences_hit_four_patterns_uniformly() {
        // For n = 3 the loopless sequence is {Y, Y, Z} with Y, Z fair and
        // independent: patterns 000, 001, 110, 111 each with probability 1/4.
        let spec = DistributionSpec::Uniform { a: -1.0, b: 1.0 };
        let trials = 4000usize;
        let mut counts = [0u32; 4];
        for t in 0..trials {
            let seed = derive_stream_seed(4242, t as u64);
            let g = ThresholdGraph::sample(&spec, 3, 0.0, ModelVariant::Loopless, seed).unwrap();
            let bits = g.creation_sequence().bits().to_vec();
            assert_eq!(bits[0], bits[1]);
            counts[(2 * bits[1] + bits[2]) as usize] += 1;
        }
        // 4-sigma multinomial band around trials/4.
        let band = 4.0 * ((trials as f64) * 0.25 * 0.75).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - trials as f64 / 4.0).abs() <= band,
                "pattern {i} count {c} outside band {band}"
            );
        }
    }

    #[test]
    fn discrete_limit_uniform_single_block() {
        let spec = DistributionSpec::DiscretePmf {
            values: vec![0.0, 1.0],
            probs: vec![0.5, 0.5],
        };
        // Per-trial atom masses fluctuate like 0.5 / sqrt(n), so the sharp
        // 0.02 band needs n large enough; 10^4 leaves 4 sigma of headroom.
        let report = discrete_limit_check(&spec, 1, 10_000, 32, 5150).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.identity_failures, 0);
        assert!(report.identity_trials_verified > 0);
        assert!((report.zero_target - 0.5).abs() < 1e-15);
        assert!((report.loopless_zero_mean - 0.5).abs() < 0.02);
        assert!(report.selfloops_zero_mass_min >= 1.0 - report.off_mass_bound - 1e-12);
    }

    #[test]
    fn discrete_limit_constant_zero_is_null() {
        let spec = DistributionSpec::DiscretePmf { values: vec![0.0], probs: vec![1.0] };
        let report = discrete_limit_check(&spec, 1, 100, 8, 31).unwrap();
        assert!(report.pass, "{report:?}");
        // Class 1 is never populated, so the exact identity is always
        // skipped, and every graph is null: all mass at 0.
        assert_eq!(report.identity_trials_verified, 0);
        assert_eq!(report.identity_trials_skipped, 8);
        assert_eq!(report.loopless_zero_mean, 1.0);
        assert_eq!(report.max_atom_deviation, 0.0);
        assert_eq!(report.selfloops_zero_mass_min, 1.0);
    }

    #[test]
    fn discrete_limit_rejects_bad_support() {
        let spec = DistributionSpec::DiscretePmf {
            values: vec![0.0, 1.0, 2.0],
            probs: vec![0.3, 0.4, 0.3],
        };
        // Values reach 2 but m = 1 allows only {0, 1}.
        assert!(matches!(
            discrete_limit_check(&spec, 1, 100, 4, 1),
            Err(Error::InvalidConfig(_))
        ));
        let continuous = DistributionSpec::Uniform { a: 0.0, b: 1.0 };
        assert!(discrete_limit_check(&continuous, 1, 100, 4, 1).is_err());
    }
}
