//! Resolution of effective settings from flags, an optional JSON config
//! file, and the environment.
//!
//! Precedence, highest first: explicit command-line flag, config-file
//! entry, environment (`THRESHOLD_SPECTRA_SEED`, seed only), built-in
//! default.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use threshold_spectra::{DistributionSpec, Error, ModelVariant, Result};

use crate::{FormatArg, ModelArgs};

/// Environment variable consulted when neither a `--seed` flag nor a
/// config-file seed is given.
pub const SEED_ENV_VAR: &str = "THRESHOLD_SPECTRA_SEED";

/// Optional defaults loaded from `--config`. Unknown keys are rejected so
/// typos surface as configuration errors instead of being ignored.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileDefaults {
    pub dist: Option<DistributionSpec>,
    pub values: Option<Vec<f64>>,
    pub n: Option<usize>,
    pub theta: Option<f64>,
    pub variant: Option<ModelVariant>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub format: Option<FormatArg>,
    pub out: Option<PathBuf>,
}

impl FileDefaults {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidConfig(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            Error::InvalidConfig(format!("invalid config {}: {e}", path.display()))
        })
    }
}

/// Parses a `--dist` argument: a shorthand name, inline JSON, or a path to
/// a JSON file.
///
/// Shorthands: `uniform` = Uniform(-1, 1), `gaussian` (or `normal`) =
/// Gaussian(0, 1), `bernoulli` = Bernoulli(1/2).
pub fn parse_dist(text: &str) -> Result<DistributionSpec> {
    let spec = match text {
        "uniform" => DistributionSpec::Uniform { a: -1.0, b: 1.0 },
        "gaussian" | "normal" => DistributionSpec::Gaussian { mean: 0.0, stddev: 1.0 },
        "bernoulli" => DistributionSpec::Bernoulli { p: 0.5 },
        inline if inline.trim_start().starts_with('{') => serde_json::from_str(inline)
            .map_err(|e| Error::InvalidConfig(format!("invalid distribution JSON: {e}")))?,
        path => {
            let body = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidConfig(format!(
                    "--dist {path:?} is neither a shorthand, inline JSON, nor a readable file: {e}"
                ))
            })?;
            serde_json::from_str(&body).map_err(|e| {
                Error::InvalidConfig(format!("invalid distribution JSON in {path}: {e}"))
            })?
        }
    };
    spec.validate()?;
    Ok(spec)
}

/// Fully resolved model inputs for one command invocation.
#[derive(Debug, Clone)]
pub struct ModelSettings {
    /// Sampling law; `None` exactly when explicit `values` are given.
    pub spec: Option<DistributionSpec>,
    /// Explicit weight vector overriding sampling.
    pub values: Option<Vec<f64>>,
    pub n: usize,
    pub theta: f64,
    pub variant: ModelVariant,
    pub seed: u64,
}

impl ModelSettings {
    /// The weight vector for one graph: the explicit override, or a fresh
    /// sample under `seed`.
    pub fn realize_values(&self, seed: u64) -> Result<Vec<f64>> {
        match (&self.values, &self.spec) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(spec)) => spec.sample(self.n, seed),
            (None, None) => Err(Error::InvalidConfig(
                "no distribution and no explicit values".into(),
            )),
        }
    }
}

fn seed_from_env() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => text
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::InvalidConfig(format!("{SEED_ENV_VAR}={text:?} is not a u64"))),
        Err(_) => Ok(None),
    }
}

/// Merges model flags over config-file defaults (and the seed environment
/// fallback) into concrete settings.
///
/// `dist_required`: when false (bench), a missing distribution falls back
/// to Uniform(-1, 1) instead of erroring.
pub fn resolve_model(
    args: &ModelArgs,
    file: &FileDefaults,
    dist_required: bool,
) -> Result<ModelSettings> {
    let values = args.values.clone().or_else(|| file.values.clone());
    let spec = match &args.dist {
        Some(text) => Some(parse_dist(text)?),
        None => file.dist.clone().map(|s| s.validate().map(|()| s)).transpose()?,
    };
    let theta = args.theta.or(file.theta).unwrap_or(0.0);
    if !theta.is_finite() {
        return Err(Error::InvalidConfig(format!("theta must be finite, got {theta}")));
    }
    let variant = args.variant.map(ModelVariant::from).or(file.variant).unwrap_or(ModelVariant::Loopless);
    let seed = match args.seed.or(file.seed) {
        Some(s) => s,
        None => seed_from_env()?.unwrap_or(0),
    };

    let (n, spec) = match &values {
        Some(v) => {
            if v.is_empty() {
                return Err(Error::InvalidConfig("--values must not be empty".into()));
            }
            if let Some(n) = args.n.or(file.n) {
                if n != v.len() {
                    return Err(Error::InvalidConfig(format!(
                        "--n {n} contradicts the {} explicit values",
                        v.len()
                    )));
                }
            }
            (v.len(), None)
        }
        None => {
            let n = args
                .n
                .or(file.n)
                .ok_or_else(|| Error::InvalidConfig("--n is required when sampling".into()))?;
            let spec = match spec {
                Some(s) => s,
                None if dist_required => {
                    return Err(Error::InvalidConfig(
                        "provide a distribution (--dist) or explicit --values".into(),
                    ))
                }
                None => DistributionSpec::Uniform { a: -1.0, b: 1.0 },
            };
            (n, Some(spec))
        }
    };
    if n < variant.min_n() {
        return Err(Error::InvalidConfig(format!(
            "variant {variant} needs n >= {}, got {n}",
            variant.min_n()
        )));
    }
    Ok(ModelSettings { spec, values, n, theta, variant, seed })
}

/// Output format after merging the flag and config file.
pub fn resolve_format(flag: Option<FormatArg>, file: &FileDefaults, default: FormatArg) -> FormatArg {
    flag.or(file.format).unwrap_or(default)
}

/// Output destination after merging the flag and config file; `None` means
/// stdout.
pub fn resolve_out(flag: Option<PathBuf>, file: &FileDefaults) -> Option<PathBuf> {
    flag.or_else(|| file.out.clone())
}

/// Trial count after merging the flag and config file.
pub fn resolve_trials(flag: Option<usize>, file: &FileDefaults, default: usize) -> usize {
    flag.or(file.trials).unwrap_or(default)
}
