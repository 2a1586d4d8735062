//! Implementations of the six subcommands. Each returns an [`Outcome`]
//! holding the rendered body and the pass/fail verdict that drives the
//! process exit code.

use std::time::Instant;

use serde::Serialize;
use threshold_spectra::asymptotics::{
    bernoulli_representation_check, coefficient_trials, discrete_limit_check, expectation_check,
    BernoulliReport, DiscreteLimitReport, ExpectationReport, MCExperimentConfig, MCReport,
};
use threshold_spectra::oracle::{
    dense_adjacency, dense_spectrum, multiplicity_within, DEFAULT_DENSE_CAP, TRIVIAL_EIG_BUCKET,
};
use threshold_spectra::{
    binary, derive_stream_seed, nontrivial_count, trivial_multiplicities, BlockDecomposition,
    DistributionSpec, Error, ModelVariant, Result, SpectralDistribution, ThresholdGraph,
};

use crate::render::{self, atom_table, histogram_bins, histogram_csv, kv_lines, HistogramBin, SCHEMA};
use crate::settings::ModelSettings;
use crate::{CheckArg, FormatArg};

/// Maximum eigenvalue deviation tolerated by `verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-8;

/// Default histogram bin width for `spectrum --histogram`.
pub const DEFAULT_BIN_WIDTH: f64 = 0.1;

/// Default sizes benchmarked by `bench`.
pub const DEFAULT_BENCH_SIZES: [usize; 4] = [64, 256, 1024, 4096];

/// `bench` reports medians over at least this many repetitions.
pub const MIN_BENCH_REPS: usize = 5;

/// Rendered output plus the verdict that selects the exit code.
pub struct Outcome {
    pub body: String,
    pub pass: bool,
}

impl Outcome {
    fn pass(body: String) -> Self {
        Outcome { body, pass: true }
    }
}

#[derive(Serialize)]
struct BlocksJson {
    k: Vec<u64>,
    l: Vec<u64>,
}

impl From<&BlockDecomposition> for BlocksJson {
    fn from(d: &BlockDecomposition) -> Self {
        BlocksJson { k: d.k().to_vec(), l: d.l().to_vec() }
    }
}

#[derive(Serialize)]
struct TrivialJson {
    minus_one: u64,
    zero: u64,
}

/// The substream seed for the `index`-th graph of a command; `index` 0 is
/// the graph single-graph commands operate on, so `sample`, `spectrum`, and
/// `verify --trials 1` all see the same graph for the same master seed.
fn graph_seed(settings: &ModelSettings, index: u64) -> u64 {
    derive_stream_seed(settings.seed, index)
}

fn graph_at(settings: &ModelSettings, index: u64) -> Result<ThresholdGraph> {
    let values = settings.realize_values(graph_seed(settings, index))?;
    ThresholdGraph::new(values, settings.theta, settings.variant)
}

/// Seed echoed in payloads: present only when the graph was sampled (an
/// explicit `--values` graph does not depend on the seed).
fn echo_seed(settings: &ModelSettings) -> Option<u64> {
    settings.values.is_none().then_some(settings.seed)
}

// ---------------------------------------------------------------------------
// sample

#[derive(Serialize)]
struct SamplePayload {
    schema: &'static str,
    command: &'static str,
    variant: ModelVariant,
    n: usize,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    values: Vec<f64>,
    creation_sequence: Vec<u8>,
    blocks: BlocksJson,
    edge_count: usize,
    /// Vertex pairs in original labels, 1-indexed.
    edges: Vec<[usize; 2]>,
    /// Self-loop vertices (1-indexed); present for the self-loop variant.
    #[serde(skip_serializing_if = "Option::is_none")]
    loops: Option<Vec<usize>>,
}

pub fn sample(settings: &ModelSettings, format: FormatArg) -> Result<Outcome> {
    let g = graph_at(settings, 0)?;
    let seq = g.creation_sequence();
    let d = seq.decompose();

    let n = g.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if g.adjacency_entry(i, j)? == 1 {
                edges.push([i + 1, j + 1]);
            }
        }
    }
    let loops = match settings.variant {
        ModelVariant::Loopless => None,
        ModelVariant::SelfLoops => {
            let mut loops = Vec::new();
            for i in 0..n {
                if g.adjacency_entry(i, i)? == 1 {
                    loops.push(i + 1);
                }
            }
            Some(loops)
        }
    };

    let payload = SamplePayload {
        schema: SCHEMA,
        command: "sample",
        variant: settings.variant,
        n,
        theta: settings.theta,
        seed: echo_seed(settings),
        values: g.values().to_vec(),
        creation_sequence: seq.bits().to_vec(),
        blocks: BlocksJson::from(&d),
        edge_count: edges.len(),
        edges,
        loops,
    };

    let body = match format {
        FormatArg::Json => render::to_json(&payload)?,
        FormatArg::Csv => {
            let mut s = String::from("source,target\n");
            for [u, v] in &payload.edges {
                s.push_str(&format!("{u},{v}\n"));
            }
            for v in payload.loops.iter().flatten() {
                s.push_str(&format!("{v},{v}\n"));
            }
            s
        }
        FormatArg::Table => {
            let sequence: String =
                payload.creation_sequence.iter().map(|b| char::from(b'0' + b)).collect();
            let mut s = kv_lines(&[
                ("variant", payload.variant.to_string()),
                ("n", payload.n.to_string()),
                ("theta", payload.theta.to_string()),
                ("creation sequence", sequence),
                ("k blocks", format!("{:?}", payload.blocks.k)),
                ("l blocks", format!("{:?}", payload.blocks.l)),
                ("edges", payload.edge_count.to_string()),
            ]);
            if let Some(loops) = &payload.loops {
                s.push_str(&kv_lines(&[("loops", format!("{loops:?}"))]));
            }
            for [u, v] in &payload.edges {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
    };
    Ok(Outcome::pass(body))
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Serialize)]
struct SpectrumPayload {
    schema: &'static str,
    command: &'static str,
    variant: ModelVariant,
    n: usize,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    blocks: BlocksJson,
    trivial: TrivialJson,
    j: u64,
    distribution: SpectralDistribution,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<Vec<HistogramBin>>,
}

pub fn spectrum(
    settings: &ModelSettings,
    histogram: bool,
    bin_width: Option<f64>,
    format: FormatArg,
) -> Result<Outcome> {
    let bin_width = bin_width.unwrap_or(DEFAULT_BIN_WIDTH);
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(Error::InvalidConfig(format!("--bin-width must be positive, got {bin_width}")));
    }
    let g = graph_at(settings, 0)?;
    let d = g.creation_sequence().decompose();
    let dist = SpectralDistribution::from_decomposition(&d)?;
    let trivial = trivial_multiplicities(&d);

    let payload = SpectrumPayload {
        schema: SCHEMA,
        command: "spectrum",
        variant: settings.variant,
        n: settings.n,
        theta: settings.theta,
        seed: echo_seed(settings),
        blocks: BlocksJson::from(&d),
        trivial: TrivialJson { minus_one: trivial.minus_one, zero: trivial.zero },
        j: nontrivial_count(&d),
        histogram: histogram.then(|| histogram_bins(&dist, bin_width)),
        distribution: dist,
    };

    let body = match format {
        FormatArg::Json => render::to_json(&payload)?,
        FormatArg::Csv => match &payload.histogram {
            Some(bins) => histogram_csv(bins),
            None => payload.distribution.to_csv(),
        },
        FormatArg::Table => {
            let mut s = kv_lines(&[
                ("variant", payload.variant.to_string()),
                ("n", payload.n.to_string()),
                ("theta", payload.theta.to_string()),
                ("k blocks", format!("{:?}", payload.blocks.k)),
                ("l blocks", format!("{:?}", payload.blocks.l)),
                ("mult(-1)", payload.trivial.minus_one.to_string()),
                ("mult(0)", payload.trivial.zero.to_string()),
                ("j", payload.j.to_string()),
            ]);
            s.push('\n');
            s.push_str(&atom_table(&payload.distribution));
            s
        }
    };
    Ok(Outcome::pass(body))
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct DenseMultJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    minus_one: Option<usize>,
    zero: usize,
}

#[derive(Serialize)]
struct VerifyPayload {
    schema: &'static str,
    command: &'static str,
    variant: ModelVariant,
    n: usize,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    trials: usize,
    tolerance: f64,
    max_deviation: f64,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failed_trial: Option<usize>,
    /// Single-trial detail: trivial multiplicities claimed by the quotient
    /// path and the matching dense counts.
    #[serde(skip_serializing_if = "Option::is_none")]
    trivial: Option<TrivialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dense_multiplicities: Option<DenseMultJson>,
    pass: bool,
}

struct VerifyTrial {
    max_deviation: f64,
    multiplicities_match: bool,
    trivial: TrivialJson,
    j: u64,
    dense: DenseMultJson,
}

fn verify_one(settings: &ModelSettings, index: u64, cap: usize) -> Result<VerifyTrial> {
    let g = graph_at(settings, index)?;
    let d = g.creation_sequence().decompose();
    let dist = SpectralDistribution::from_decomposition(&d)?;
    let dense = dense_spectrum(&dense_adjacency(&g, cap)?);

    let expanded = dist.expanded_eigenvalues();
    let max_deviation = expanded
        .iter()
        .zip(&dense.eigenvalues)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);

    let trivial = trivial_multiplicities(&d);
    let dense_zero = multiplicity_within(&dense.eigenvalues, 0.0, TRIVIAL_EIG_BUCKET);
    let dense_minus_one = (settings.variant == ModelVariant::Loopless)
        .then(|| multiplicity_within(&dense.eigenvalues, -1.0, TRIVIAL_EIG_BUCKET));
    let multiplicities_match = dense_zero as u64 == trivial.zero
        && dense_minus_one.is_none_or(|c| c as u64 == trivial.minus_one);

    Ok(VerifyTrial {
        max_deviation,
        multiplicities_match,
        trivial: TrivialJson { minus_one: trivial.minus_one, zero: trivial.zero },
        j: nontrivial_count(&d),
        dense: DenseMultJson { minus_one: dense_minus_one, zero: dense_zero },
    })
}

pub fn verify(
    settings: &ModelSettings,
    trials: usize,
    cap: Option<usize>,
    format: FormatArg,
) -> Result<Outcome> {
    let cap = cap.unwrap_or(DEFAULT_DENSE_CAP);
    if settings.n > cap {
        return Err(Error::InvalidConfig(format!(
            "verify needs n <= dense cap ({cap}), got n = {}",
            settings.n
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    if settings.values.is_some() && trials > 1 {
        return Err(Error::InvalidConfig(
            "explicit --values describe a single graph; drop --trials or use a distribution".into(),
        ));
    }

    let mut rows = Vec::with_capacity(trials);
    for t in 0..trials {
        rows.push(verify_one(settings, t as u64, cap)?);
    }

    let max_deviation = rows.iter().map(|r| r.max_deviation).fold(0.0f64, f64::max);
    let trial_pass =
        |r: &VerifyTrial| r.max_deviation <= VERIFY_TOLERANCE && r.multiplicities_match;
    let failures = rows.iter().filter(|r| !trial_pass(r)).count();
    let first_failed_trial = rows.iter().position(|r| !trial_pass(r));
    let pass = failures == 0;

    let single = (trials == 1).then(|| &rows[0]);
    let payload = VerifyPayload {
        schema: SCHEMA,
        command: "verify",
        variant: settings.variant,
        n: settings.n,
        theta: settings.theta,
        seed: echo_seed(settings),
        trials,
        tolerance: VERIFY_TOLERANCE,
        max_deviation,
        failures,
        first_failed_trial,
        trivial: single.map(|r| TrivialJson {
            minus_one: r.trivial.minus_one,
            zero: r.trivial.zero,
        }),
        j: single.map(|r| r.j),
        dense_multiplicities: single.map(|r| DenseMultJson {
            minus_one: r.dense.minus_one,
            zero: r.dense.zero,
        }),
        pass,
    };

    let body = match format {
        FormatArg::Json => render::to_json(&payload)?,
        FormatArg::Csv => {
            let mut s = String::from("trial,max_deviation,multiplicities_match,pass\n");
            for (t, r) in rows.iter().enumerate() {
                s.push_str(&format!(
                    "{t},{},{},{}\n",
                    r.max_deviation,
                    r.multiplicities_match,
                    trial_pass(r)
                ));
            }
            s
        }
        FormatArg::Table => {
            let mut pairs = vec![
                ("variant", payload.variant.to_string()),
                ("n", payload.n.to_string()),
                ("trials", trials.to_string()),
                ("max deviation", format!("{:.3e}", payload.max_deviation)),
                ("tolerance", format!("{:.0e}", payload.tolerance)),
                ("failures", failures.to_string()),
                ("pass", pass.to_string()),
            ];
            if let (Some(t), Some(j)) = (&payload.trivial, payload.j) {
                pairs.push(("mult(-1)", t.minus_one.to_string()));
                pairs.push(("mult(0)", t.zero.to_string()));
                pairs.push(("j", j.to_string()));
            }
            kv_lines(&pairs)
        }
    };
    Ok(Outcome { body, pass })
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
    n: usize,
    m: usize,
    j: u64,
    quotient_seconds: f64,
    dense_seconds: Option<f64>,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        0.5 * (xs[mid - 1] + xs[mid])
    }
}

pub fn bench(
    settings: &ModelSettings,
    sizes: Option<Vec<usize>>,
    reps: usize,
    cap: Option<usize>,
    format: Option<FormatArg>,
) -> Result<Outcome> {
    if !matches!(format, None | Some(FormatArg::Csv)) {
        return Err(Error::InvalidConfig(
            "bench emits CSV only; timings are excluded from the JSON schema".into(),
        ));
    }
    if reps < MIN_BENCH_REPS {
        return Err(Error::InvalidConfig(format!("bench needs --reps >= {MIN_BENCH_REPS}")));
    }
    let cap = cap.unwrap_or(DEFAULT_DENSE_CAP);
    let sizes = sizes.unwrap_or_else(|| DEFAULT_BENCH_SIZES.to_vec());
    if sizes.is_empty() {
        return Err(Error::InvalidConfig("need at least one size".into()));
    }
    let spec = settings.spec.as_ref().ok_or_else(|| {
        Error::InvalidConfig("bench samples graphs; explicit --values are not applicable".into())
    })?;

    let mut rows = Vec::with_capacity(sizes.len());
    for (index, &n) in sizes.iter().enumerate() {
        if n < settings.variant.min_n() {
            return Err(Error::InvalidConfig(format!(
                "variant {} needs n >= {}, got {n}",
                settings.variant,
                settings.variant.min_n()
            )));
        }
        let values = spec.sample(n, derive_stream_seed(settings.seed, index as u64))?;
        let g = ThresholdGraph::new(values, settings.theta, settings.variant)?;
        // One untimed run to surface errors and capture the decomposition.
        let d = g.creation_sequence().decompose();
        SpectralDistribution::from_decomposition(&d)?;

        let mut quotient_times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            let d = g.creation_sequence().decompose();
            let _ = SpectralDistribution::from_decomposition(&d);
            quotient_times.push(start.elapsed().as_secs_f64());
        }

        let dense_seconds = if n <= cap {
            let mut dense_times = Vec::with_capacity(reps);
            for _ in 0..reps {
                let start = Instant::now();
                let a = dense_adjacency(&g, cap)?;
                let _ = dense_spectrum(&a);
                dense_times.push(start.elapsed().as_secs_f64());
            }
            Some(median(dense_times))
        } else {
            None
        };

        rows.push(BenchRow {
            n,
            m: d.m(),
            j: nontrivial_count(&d),
            quotient_seconds: median(quotient_times),
            dense_seconds,
        });
    }

    let mut body = String::from("n,m,j,quotient_seconds,dense_seconds,speedup\n");
    for r in &rows {
        let (dense, speedup) = match r.dense_seconds {
            Some(d) => (format!("{d:.9}"), format!("{:.2}", d / r.quotient_seconds)),
            None => ("skipped".into(), String::new()),
        };
        body.push_str(&format!(
            "{},{},{},{:.9},{},{}\n",
            r.n, r.m, r.j, r.quotient_seconds, dense, speedup
        ));
    }
    Ok(Outcome::pass(body))
}

// ---------------------------------------------------------------------------
// limits

#[derive(Serialize)]
struct LimitsPayload {
    schema: &'static str,
    command: &'static str,
    check: &'static str,
    dist: DistributionSpec,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<ModelVariant>,
    n: usize,
    trials: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reports: Option<Vec<MCReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expectation: Option<ExpectationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bernoulli: Option<BernoulliReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrete: Option<DiscreteLimitReport>,
    pass: bool,
}

pub fn limits(
    settings: &ModelSettings,
    check: CheckArg,
    trials: usize,
    m: Option<usize>,
    format: FormatArg,
) -> Result<Outcome> {
    if matches!(format, FormatArg::Csv) {
        return Err(Error::InvalidConfig("limits emits json or table, not csv".into()));
    }
    if settings.values.is_some() {
        return Err(Error::InvalidConfig(
            "limits samples many graphs; explicit --values are not applicable".into(),
        ));
    }
    let spec = settings
        .spec
        .clone()
        .ok_or_else(|| Error::InvalidConfig("limits needs a distribution (--dist)".into()))?;
    let cfg = MCExperimentConfig {
        spec: spec.clone(),
        theta: settings.theta,
        variant: settings.variant,
        n: settings.n,
        trials,
        seed: settings.seed,
    };

    let mut payload = LimitsPayload {
        schema: SCHEMA,
        command: "limits",
        check: "",
        dist: spec,
        theta: settings.theta,
        variant: Some(settings.variant),
        n: settings.n,
        trials,
        seed: settings.seed,
        m: None,
        reports: None,
        expectation: None,
        bernoulli: None,
        discrete: None,
        pass: false,
    };

    match check {
        CheckArg::Coefficients | CheckArg::Clt => {
            payload.check =
                if matches!(check, CheckArg::Clt) { "clt" } else { "coefficients" };
            let mut reports = coefficient_trials(&cfg)?;
            if matches!(check, CheckArg::Clt) && reports.iter().any(|r| r.clt.is_none()) {
                return Err(Error::InvalidConfig(
                    "the CLT check needs a continuous weight law symmetric around theta/2 \
                     (try --dist gaussian with --theta 0)"
                        .into(),
                ));
            }
            for r in &mut reports {
                r.per_trial.clear();
            }
            payload.pass = reports.iter().all(MCReport::pass);
            payload.reports = Some(reports);
        }
        CheckArg::Expectation => {
            payload.check = "expectation";
            let report = expectation_check(&cfg)?;
            payload.pass = report.pass;
            payload.expectation = Some(report);
        }
        CheckArg::Bernoulli => {
            payload.check = "bernoulli";
            // This check pins its own weight law; echo what actually ran.
            payload.dist = DistributionSpec::Uniform { a: -1.0, b: 1.0 };
            payload.theta = 0.0;
            payload.variant = None;
            let report = bernoulli_representation_check(settings.n, trials, settings.seed)?;
            payload.pass = report.pass;
            payload.bernoulli = Some(report);
        }
        CheckArg::Discrete => {
            payload.check = "discrete";
            let m = m.ok_or_else(|| {
                Error::InvalidConfig("the discrete check needs --m (threshold is 2m-1)".into())
            })?;
            let report =
                discrete_limit_check(&payload.dist, m, settings.n, trials, settings.seed)?;
            payload.theta = report.theta;
            payload.variant = None; // the check exercises both variants
            payload.m = Some(m);
            payload.pass = report.pass;
            payload.discrete = Some(report);
        }
    }

    let body = match format {
        FormatArg::Json => render::to_json(&payload)?,
        FormatArg::Table => limits_table(&payload),
        FormatArg::Csv => unreachable!("rejected above"),
    };
    Ok(Outcome { body, pass: payload.pass })
}

fn limits_table(p: &LimitsPayload) -> String {
    let mut pairs = vec![
        ("check", p.check.to_string()),
        ("n", p.n.to_string()),
        ("trials", p.trials.to_string()),
        ("seed", p.seed.to_string()),
    ];
    if let Some(reports) = &p.reports {
        for r in reports {
            pairs.push(("statistic", r.statistic.clone()));
            pairs.push(("  mean", format!("{:.6}", r.mean)));
            if let Some(clt) = &r.clt {
                pairs.push(("  limit", format!("{:.6}", clt.limit)));
                pairs.push(("  ks distance", format!("{:.4}", clt.ks_distance)));
                pairs.push(("  ks threshold", format!("{:.4}", clt.ks_threshold)));
            }
        }
    }
    if let Some(e) = &p.expectation {
        for c in &e.checks {
            pairs.push(("statistic", c.statistic.clone()));
            pairs.push(("  expected", format!("{:.6}", c.expected)));
            pairs.push(("  observed", format!("{:.6}", c.observed_mean)));
            pairs.push(("  band", format!("{:.6}", c.band)));
        }
    }
    if let Some(b) = &p.bernoulli {
        pairs.push(("max frequency deviation", format!("{:.5}", b.max_frequency_deviation)));
        pairs.push(("frequency band", format!("{:.5}", b.frequency_band)));
        pairs.push(("lag-1 correlation", format!("{:.5}", b.lag1_correlation)));
        pairs.push(("first bits equal", b.loopless_first_bits_equal.to_string()));
    }
    if let Some(d) = &p.discrete {
        pairs.push(("identity trials verified", d.identity_trials_verified.to_string()));
        pairs.push(("identity trials skipped", d.identity_trials_skipped.to_string()));
        pairs.push(("identity failures", d.identity_failures.to_string()));
        pairs.push(("atom targets (-1, 0)", format!("({:.4}, {:.4})", d.minus_one_target, d.zero_target)));
        pairs.push(("max atom deviation", format!("{:.5}", d.max_atom_deviation)));
        pairs.push(("max off-atom mass", format!("{:.6}", d.max_off_mass)));
    }
    pairs.push(("pass", p.pass.to_string()));
    kv_lines(&pairs)
}

// ---------------------------------------------------------------------------
// binary

#[derive(Serialize)]
struct LambdaJson {
    minus: f64,
    plus: f64,
}

#[derive(Serialize)]
struct BinaryPayload {
    schema: &'static str,
    command: &'static str,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<LambdaJson>,
    distribution: SpectralDistribution,
}

pub struct BinaryRequest {
    pub k: Option<u64>,
    pub l: Option<u64>,
    pub mean: bool,
    pub limit: bool,
    pub n: Option<u64>,
    pub p: Option<f64>,
}

pub fn binary_cmd(req: &BinaryRequest, format: FormatArg) -> Result<Outcome> {
    let exact = req.k.is_some() || req.l.is_some();
    let modes = usize::from(exact) + usize::from(req.mean) + usize::from(req.limit);
    if modes != 1 {
        return Err(Error::InvalidConfig(
            "choose exactly one mode: --k/--l (one graph), --mean, or --limit".into(),
        ));
    }

    let payload = if exact {
        let (Some(k), Some(l)) = (req.k, req.l) else {
            return Err(Error::InvalidConfig("the exact mode needs both --k and --l".into()));
        };
        let (minus, plus) = binary::lambda_pm(k, l);
        BinaryPayload {
            schema: SCHEMA,
            command: "binary",
            mode: "exact",
            k: Some(k),
            l: Some(l),
            n: None,
            p: None,
            lambda: Some(LambdaJson { minus, plus }),
            distribution: binary::sample_spectrum(k, l)?,
        }
    } else if req.mean {
        let (Some(n), Some(p)) = (req.n, req.p) else {
            return Err(Error::InvalidConfig("--mean needs --n and --p".into()));
        };
        BinaryPayload {
            schema: SCHEMA,
            command: "binary",
            mode: "mean",
            k: None,
            l: None,
            n: Some(n),
            p: Some(p),
            lambda: None,
            distribution: binary::mean_spectrum(n, p)?,
        }
    } else {
        let Some(p) = req.p else {
            return Err(Error::InvalidConfig("--limit needs --p".into()));
        };
        BinaryPayload {
            schema: SCHEMA,
            command: "binary",
            mode: "limit",
            k: None,
            l: None,
            n: None,
            p: Some(p),
            lambda: None,
            distribution: binary::limit_spectrum(p)?,
        }
    };

    let body = match format {
        FormatArg::Json => render::to_json(&payload)?,
        FormatArg::Csv => payload.distribution.to_csv(),
        FormatArg::Table => {
            let mut pairs = vec![("mode", payload.mode.to_string())];
            if let (Some(k), Some(l)) = (payload.k, payload.l) {
                pairs.push(("k", k.to_string()));
                pairs.push(("l", l.to_string()));
            }
            if let Some(n) = payload.n {
                pairs.push(("n", n.to_string()));
            }
            if let Some(p) = payload.p {
                pairs.push(("p", p.to_string()));
            }
            if let Some(lambda) = &payload.lambda {
                pairs.push(("lambda-", lambda.minus.to_string()));
                pairs.push(("lambda+", lambda.plus.to_string()));
            }
            let mut s = kv_lines(&pairs);
            s.push('\n');
            s.push_str(&atom_table(&payload.distribution));
            s
        }
    };
    Ok(Outcome::pass(body))
}
