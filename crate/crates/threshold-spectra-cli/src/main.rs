//! Command-line front end for threshold-graph spectra: sampling, exact
//! quotient spectra, dense-oracle verification, benchmarking, and Monte
//! Carlo limit checks, with JSON/CSV/table output.
//!
//! Exit codes: 0 = success / all checks passed, 1 = a verification or
//! statistical check failed, 2 = configuration or I/O error.
//!
//! All sampling is seeded. The graph with index `i` of a command (trial
//! `i`, or benchmark size slot `i`) draws from substream `i` of the master
//! seed, so `sample`, `spectrum`, and single-trial `verify` with the same
//! settings operate on the same graph, and reruns are byte-identical.

mod commands;
mod render;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use threshold_spectra::{Error, ModelVariant, Result};

use commands::{BinaryRequest, Outcome};
use settings::{resolve_format, resolve_model, resolve_out, resolve_trials, FileDefaults};

#[derive(Parser)]
#[command(
    name = "threshold-spectra",
    version,
    about = "Spectra of threshold graphs: exact block-quotient computation, \
             dense-oracle verification, and limit-law experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON file with default settings; explicit flags take precedence
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format (default json; bench emits csv)
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write output to this path instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for Monte Carlo commands (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

/// Output format selector; also accepted in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Json,
    Csv,
    Table,
}

/// Graph variant selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Simple graph: no self-loops
    Loopless,
    /// Vertex i additionally carries a loop when 2 X_i > theta
    SelfLoops,
}

impl From<VariantArg> for ModelVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Loopless => ModelVariant::Loopless,
            VariantArg::SelfLoops => ModelVariant::SelfLoops,
        }
    }
}

/// Limit-theorem check selector for `limits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    /// Trivial-atom weight statistics (no distributional assumption)
    Coefficients,
    /// Strong-law and normal-fluctuation check of the atom weights
    Clt,
    /// Exact finite-n expectation identities of the atom counts
    Expectation,
    /// Coin-flip representation of creation sequences
    Bernoulli,
    /// Two-point limit law for integer weights at threshold 2m-1
    Discrete,
}

/// Model inputs shared by the sampling commands.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Weight distribution: "uniform", "gaussian", "bernoulli", inline
    /// JSON, or a path to a JSON file
    #[arg(long, value_name = "SPEC")]
    pub dist: Option<String>,
    /// Explicit comma-separated weights; bypasses sampling
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_name = "X,...")]
    pub values: Option<Vec<f64>>,
    /// Number of vertices
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge threshold (default 0)
    #[arg(long)]
    pub theta: Option<f64>,
    /// Graph variant (default loopless)
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Master RNG seed (fallback: config file, then THRESHOLD_SPECTRA_SEED,
    /// then 0)
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a threshold graph; emit edge list, creation sequence, and
    /// block decomposition
    Sample {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Compute the exact spectral distribution through the block quotient
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Also emit a histogram of the spectrum
        #[arg(long)]
        histogram: bool,
        /// Histogram bin width (default 0.1)
        #[arg(long, value_name = "WIDTH")]
        bin_width: Option<f64>,
    },
    /// Cross-check the quotient spectrum against a dense eigensolver
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of independently seeded graphs to verify (default 1)
        #[arg(long)]
        trials: Option<usize>,
        /// Dense-oracle size cap (default 4096)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Time the quotient path against the dense oracle (CSV output)
    Bench {
        #[command(flatten)]
        model: ModelArgs,
        /// Graph sizes to benchmark (default 64,256,1024,4096)
        #[arg(long, value_delimiter = ',', value_name = "N,...")]
        sizes: Option<Vec<usize>>,
        /// Repetitions per size; the median is reported (default 5)
        #[arg(long)]
        reps: Option<usize>,
        /// Dense-oracle size cap; larger sizes skip the dense timing
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Monte Carlo checks of limiting spectral behaviour
    Limits {
        #[command(flatten)]
        model: ModelArgs,
        /// Which check to run
        #[arg(long, value_enum)]
        check: CheckArg,
        /// Number of Monte Carlo trials (default 100)
        #[arg(long)]
        trials: Option<usize>,
        /// Number of value classes above the midpoint for --check discrete;
        /// the threshold is 2m-1
        #[arg(long)]
        m: Option<usize>,
    },
    /// Closed-form spectra for two-valued (Bernoulli) weights
    Binary {
        /// Ones-side size of one realized graph (with --l)
        #[arg(long)]
        k: Option<u64>,
        /// Zeros-side size of one realized graph (with --k)
        #[arg(long)]
        l: Option<u64>,
        /// Mean spectral distribution over Bernoulli(p) weights (needs --n, --p)
        #[arg(long)]
        mean: bool,
        /// Limiting spectral distribution for n -> infinity (needs --p)
        #[arg(long)]
        limit: bool,
        /// Number of vertices for --mean
        #[arg(long)]
        n: Option<u64>,
        /// Bernoulli success probability
        #[arg(long)]
        p: Option<f64>,
    },
}

fn run(cli: &Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let file = FileDefaults::load(cli.config.as_deref())?;
    let out = resolve_out(cli.out.clone(), &file);
    let format = resolve_format(cli.format, &file, FormatArg::Json);

    let outcome = match &cli.command {
        Command::Sample { model } => {
            commands::sample(&resolve_model(model, &file, true)?, format)?
        }
        Command::Spectrum { model, histogram, bin_width } => commands::spectrum(
            &resolve_model(model, &file, true)?,
            *histogram,
            *bin_width,
            format,
        )?,
        Command::Verify { model, trials, cap } => {
            let settings = resolve_model(model, &file, true)?;
            let trials = resolve_trials(*trials, &file, 1);
            commands::verify(&settings, trials, *cap, format)?
        }
        Command::Bench { model, sizes, reps, cap } => {
            // Bench sizes come from --sizes, so resolve with a dummy n.
            let mut model = model.clone();
            model.n = model.n.or(Some(2));
            let settings = resolve_model(&model, &file, false)?;
            commands::bench(&settings, sizes.clone(), reps.unwrap_or(5), *cap, cli.format)?
        }
        Command::Limits { model, check, trials, m } => {
            // The coin-flip check pins its own weight law, so a --dist is
            // not required there.
            let dist_required = !matches!(check, CheckArg::Bernoulli);
            let settings = resolve_model(model, &file, dist_required)?;
            let trials = resolve_trials(*trials, &file, 100);
            commands::limits(&settings, *check, trials, *m, format)?
        }
        Command::Binary { k, l, mean, limit, n, p } => {
            let req =
                BinaryRequest { k: *k, l: *l, mean: *mean, limit: *limit, n: *n, p: *p };
            commands::binary_cmd(&req, format)?
        }
    };
    Ok((outcome, out))
}

fn deliver(outcome: &Outcome, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| {
            Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.body.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::InvalidConfig(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot size the thread pool: {e}");
            return ExitCode::from(2);
        }
    }

    match run(&cli) {
        Ok((outcome, out)) => {
            if let Err(e) = deliver(&outcome, out.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed (see report)");
                ExitCode::from(1)
            }
        }
        // A detected internal inconsistency is a failed verification, not a
        // configuration problem.
        Err(e @ Error::InternalConsistency(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
