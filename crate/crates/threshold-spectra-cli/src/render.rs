//! Output rendering: versioned JSON payloads, CSV, and plain-text tables.

use serde::Serialize;
use threshold_spectra::spectrum::AtomWeight;
use threshold_spectra::{Error, Result, SpectralDistribution};

/// Version tag present in every JSON payload.
pub const SCHEMA: &str = "threshold-spectra/v1";

/// Serializes a payload as pretty JSON with a trailing newline. Struct
/// field order is fixed at compile time and no timestamps are embedded, so
/// equal payloads render byte-identically.
pub fn to_json<T: Serialize>(payload: &T) -> Result<String> {
    let mut body = serde_json::to_string_pretty(payload)
        .map_err(|e| Error::InternalConsistency(format!("JSON serialization failed: {e}")))?;
    body.push('\n');
    Ok(body)
}

/// One row of a rendered histogram.
#[derive(Debug, Clone, Serialize)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub mass: f64,
}

pub fn histogram_bins(dist: &SpectralDistribution, bin_width: f64) -> Vec<HistogramBin> {
    dist.histogram(bin_width)
        .into_iter()
        .map(|(left, right, mass)| HistogramBin { left, right, mass })
        .collect()
}

pub fn histogram_csv(bins: &[HistogramBin]) -> String {
    let mut s = String::from("bin_left,bin_right,mass\n");
    for b in bins {
        s.push_str(&format!("{},{},{}\n", b.left, b.right, b.mass));
    }
    s
}

/// Two-column table of spectral atoms.
pub fn atom_table(dist: &SpectralDistribution) -> String {
    let weight_head = if dist.is_exact() { "multiplicity" } else { "weight" };
    let mut s = format!("{:>20}  {:>14}\n", "eigenvalue", weight_head);
    for atom in dist.atoms() {
        let weight = match atom.weight {
            AtomWeight::Multiplicity(m) => m.to_string(),
            AtomWeight::Mass(w) => format!("{w}"),
        };
        s.push_str(&format!("{:>20}  {:>14}\n", atom.value, weight));
    }
    s
}

/// `key: value` summary lines used by table output.
pub fn kv_lines(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in pairs {
        s.push_str(&format!("{k:<width$}  {v}\n"));
    }
    s
}
