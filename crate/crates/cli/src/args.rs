use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qksvm",
    version,
    about = "Quantum-kernel SVM experiment harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset as CSV with a provenance sidecar.
    GenData(GenDataArgs),
    /// Compute the Gram matrix of a dataset and report its PSD check.
    Kernel(KernelArgs),
    /// Train on the training split and evaluate both splits.
    TrainEval(TrainEvalArgs),
    /// Train/evaluate once per feature-map depth.
    SweepDepth(SweepDepthArgs),
    /// Train/evaluate over a kernel × learning-rate grid (SGD trainer).
    SweepKernels(SweepKernelsArgs),
    /// Render a sweep CSV as an SVG chart.
    Plot(PlotArgs),
    /// Run a suite file and write every table, report and chart.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum GenKind {
    Xor,
    Rings,
    NoisyLabels,
    Blobs,
}

#[derive(Debug, Args)]
pub struct GenDataArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Samples per class.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Coordinate jitter (xor, rings) or label-flip fraction (noisy_labels).
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Blob centers, e.g. "0,0;4,0".
    #[arg(long, default_value = "-2,-2;2,2")]
    pub centers: String,
    /// Blob standard deviation.
    #[arg(long, default_value_t = 1.0)]
    pub spread: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum TrainerArg {
    Smo,
    Sgd,
}

/// Experiment config: a JSON file, flags, or both (flags win).
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Experiment config JSON. Relative dataset paths resolve against its directory.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Dataset CSV (relative to the working directory).
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub label_column: Option<String>,
    #[arg(long)]
    pub tag: Option<String>,
    /// Comma-separated steps: standard, minmax, minmax:LO:HI, pca:K, or none.
    #[arg(long)]
    pub preprocess: Option<String>,
    #[arg(long)]
    pub train_fraction: Option<f64>,
    #[arg(long)]
    pub split_seed: Option<u64>,
    /// quantum, quantum_linear, quantum_full, linear, poly, rbf or sigmoid.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Feature-map repetitions; `sweep-depth` takes a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub reps: Vec<usize>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub coef0: Option<f64>,
    #[arg(long = "C", alias = "c")]
    pub c: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_passes: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub trainer: Option<TrainerArg>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    /// Output path; `.json` writes JSON, anything else CSV.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainEvalArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    /// Precomputed full-dataset Gram (CSV or JSON) from `qksvm kernel`.
    #[arg(long)]
    pub gram: Option<PathBuf>,
    /// Report JSON (config, split, transforms, train/test reports).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub model_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepDepthArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    /// Sweep CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Full sweep result with per-row reports and timings.
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepKernelsArgs {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "linear,poly,rbf,sigmoid,quantum_linear"
    )]
    pub kernels: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.1,0.5")]
    pub learning_rates: Vec<f64>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Sweep CSV.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
}
