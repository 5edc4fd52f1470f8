//! Experiment harness: replayable configs, train/evaluate runs, depth and
//! kernel sweeps, and multi-study suites.

mod config;
mod run;
mod suite;
mod sweep;

pub use config::{
    prepare, prepare_dataset, DatasetSpec, ExperimentConfig, KernelSpec, Prepared, PreprocessStep,
    SplitSpec,
};
pub use run::{run_train_eval, run_train_eval_with_gram, Outcome, TrainEvalResult, TrainedModel};
pub use suite::{run_suite, Study, StudyResult, SuiteConfig, SuiteReport, SummaryRow};
pub use sweep::{kernel_by_name, sweep_depth, sweep_kernels, SweepKind, SweepResult, SweepRow};
