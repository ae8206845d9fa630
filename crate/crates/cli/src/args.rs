//! Command-line definitions.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "pogs",
    version,
    about = "Periodic group-sparse denoising for vibration fault detection",
    propagate_version = true
)]
pub struct Cli {
    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Write the JSON run report to this path instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a synthetic fault signal with ground-truth labels.
    Simulate(SimulateArgs),
    /// Denoise a signal with a group-sparse pattern.
    Denoise(DenoiseArgs),
    /// Denoise once per fault frequency to separate compound faults.
    Compound(CompoundArgs),
    /// Estimate the background noise level of a signal.
    EstimateNoise(EstimateNoiseArgs),
    /// Score a denoised estimate against a clean reference and labels.
    Evaluate(EvaluateArgs),
    /// Write the magnitude or envelope spectrum of a signal as CSV.
    Spectrum(SpectrumArgs),
    /// Bearing fault frequencies from shaft speed and characteristic orders.
    FaultFreqs(FaultFreqsArgs),
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Seed for the pseudorandom generator.
    #[arg(long)]
    pub seed: u64,
    /// Sampling rate in Hz.
    #[arg(long, default_value_t = 6400.0)]
    pub fs: f64,
    /// Signal length in seconds.
    #[arg(long, default_value_t = 1.0)]
    pub duration: f64,
    /// Transient repetition rate in Hz.
    #[arg(long, default_value_t = 80.0)]
    pub fault_freq: f64,
    /// Time of the first transient in seconds.
    #[arg(long, default_value_t = 0.36)]
    pub first_fault_time: f64,
    /// Number of transients.
    #[arg(long, default_value_t = 50)]
    pub n_faults: usize,
    /// Transient length in samples.
    #[arg(long, default_value_t = 10)]
    pub transient_len: usize,
    /// Upper bound on the sinusoidal components per transient.
    #[arg(long, default_value_t = 10)]
    pub max_components: usize,
    /// Standard deviation of the added white Gaussian noise.
    #[arg(long, default_value_t = 2.5)]
    pub noise_sigma: f64,
    #[arg(long, default_value = "clean.csv", value_name = "PATH")]
    pub out_clean: PathBuf,
    #[arg(long, default_value = "noisy.csv", value_name = "PATH")]
    pub out_noisy: PathBuf,
    #[arg(long, default_value = "labels.json", value_name = "PATH")]
    pub out_labels: PathBuf,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("layout")
        .required(true)
        .args(["fault_freq", "group_size", "pattern"])
))]
pub struct DenoiseArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub output: PathBuf,

    /// Regularization weight (positive).
    #[arg(long, conflicts_with = "auto_lambda", required_unless_present = "auto_lambda")]
    pub lambda: Option<f64>,
    /// Derive lambda from the estimated noise level and the multiplier
    /// table (needs a periodic layout with --m and --n1 between 1 and 4).
    #[arg(long)]
    pub auto_lambda: bool,

    /// Periodic layout: weight runs repeat at this fault frequency (Hz).
    #[arg(long, value_name = "HZ")]
    pub fault_freq: Option<f64>,
    /// Active samples per period of the periodic layout.
    #[arg(long, default_value_t = 2)]
    pub n1: usize,
    /// Periods spanned by one group of the periodic layout.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Contiguous layout: an all-ones group of this length.
    #[arg(long, value_name = "K")]
    pub group_size: Option<usize>,
    /// Explicit layout: a string of 0s and 1s.
    #[arg(long, value_name = "BITS")]
    pub pattern: Option<String>,

    /// Sampling rate override (otherwise read from the input header).
    #[arg(long)]
    pub fs: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct SolverArgs {
    /// Penalty family: abs, log, rat, or atan.
    #[arg(long, default_value = "atan")]
    pub penalty: String,
    /// Non-convexity parameter; defaults to 0.99 / (active_count * lambda).
    #[arg(long, value_name = "A")]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub support_eps: f64,
    /// Exit with a numerical error if the solver does not converge.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Args)]
pub struct CompoundArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Stem for the per-frequency outputs:
    /// <stem>_<freq>hz.csv and <stem>_<freq>hz_envelope.csv.
    #[arg(long, value_name = "STEM")]
    pub output_prefix: PathBuf,
    /// Fault frequency in Hz; repeat once per fault to separate.
    #[arg(long = "fault-freq", value_name = "HZ", required = true)]
    pub fault_freqs: Vec<f64>,
    #[arg(long, default_value_t = 2)]
    pub n1: usize,
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, conflicts_with = "auto_lambda", required_unless_present = "auto_lambda")]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub auto_lambda: bool,
    #[arg(long)]
    pub fs: Option<f64>,
    /// Moving-average width for the smoothed envelope-spectrum column.
    #[arg(long, default_value_t = 5)]
    pub smooth_width: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct EstimateNoiseArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Periods per group, for the implied lambda (1..=4).
    #[arg(long, requires = "n1")]
    pub m: Option<usize>,
    /// Active samples per period, for the implied lambda (1..=4).
    #[arg(long, requires = "m")]
    pub n1: Option<usize>,
    #[arg(long)]
    pub fs: Option<f64>,
}

#[derive(Args)]
pub struct EvaluateArgs {
    /// Denoised estimate to score.
    #[arg(long, value_name = "PATH")]
    pub estimate: PathBuf,
    /// Noise-free reference signal.
    #[arg(long, value_name = "PATH")]
    pub clean: PathBuf,
    /// Ground-truth transient intervals (JSON).
    #[arg(long, value_name = "PATH")]
    pub labels: PathBuf,
    /// Where to write the metrics report.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub n_thresholds: usize,
    #[arg(long)]
    pub fs: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    Fourier,
    Envelope,
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "fourier")]
    pub mode: SpectrumMode,
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    /// Moving-average width for the smoothed column.
    #[arg(long, default_value_t = 5)]
    pub smooth_width: usize,
    #[arg(long)]
    pub fs: Option<f64>,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("speed")
        .required(true)
        .args(["rpm", "shaft_freq"])
))]
pub struct FaultFreqsArgs {
    /// Shaft speed in revolutions per minute.
    #[arg(long)]
    pub rpm: Option<f64>,
    /// Shaft rotation frequency in Hz.
    #[arg(long)]
    pub shaft_freq: Option<f64>,
    /// Characteristic orders: ftf=<v>,bpfo=<v>,bpfi=<v>,bsf=<v>.
    #[arg(long, value_name = "LIST")]
    pub orders: String,
}
