use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::run::{elapsed_seconds, run_train_eval};
use super::sweep::{kernel_by_name, sweep_depth, sweep_kernels, SweepResult};
use crate::error::{Error, Result};
use crate::metrics::EvalReport;

/// One study of a suite. `tag` labels the dataset in the summary table
/// (`b` breast cancer, `i` Iris, `r` hard surrogate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "study", rename_all = "snake_case")]
pub enum Study {
    /// Same split and trainer, one run per kernel.
    Compare {
        tag: String,
        config: ExperimentConfig,
        kernels: Vec<String>,
    },
    Depth {
        tag: String,
        config: ExperimentConfig,
        reps: Vec<usize>,
    },
    KernelSweep {
        tag: String,
        config: ExperimentConfig,
        kernels: Vec<String>,
        learning_rates: Vec<f64>,
    },
}

impl Study {
    pub fn tag(&self) -> &str {
        match self {
            Study::Compare { tag, .. }
            | Study::Depth { tag, .. }
            | Study::KernelSweep { tag, .. } => tag,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub studies: Vec<Study>,
}

impl SuiteConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// A row of the per-dataset summary table (test-split scores).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub tag: String,
    pub model: String,
    pub train_accuracy: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl SummaryRow {
    fn new(tag: &str, model: String, train_accuracy: f64, test: &EvalReport) -> Self {
        Self {
            tag: tag.to_string(),
            model,
            train_accuracy,
            accuracy: test.accuracy,
            precision: test.precision,
            recall: test.recall,
            f1: test.f1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "study", rename_all = "snake_case")]
pub enum StudyResult {
    Compare {
        tag: String,
        runs: Vec<super::run::TrainEvalResult>,
    },
    Depth {
        tag: String,
        sweep: SweepResult,
    },
    KernelSweep {
        tag: String,
        sweep: SweepResult,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteConfig,
    pub results: Vec<StudyResult>,
    pub summary: Vec<SummaryRow>,
    pub wall_clock_seconds: f64,
}

pub fn run_suite(suite: &SuiteConfig, base: &Path) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut results = Vec::new();
    let mut summary = Vec::new();
    for study in &suite.studies {
        match study {
            Study::Compare {
                tag,
                config,
                kernels,
            } => {
                let mut runs = Vec::new();
                for name in kernels {
                    let mut cfg = config.clone();
                    cfg.kernel = kernel_by_name(name, &config.kernel)?;
                    cfg.tag = Some(tag.clone());
                    let run = run_train_eval(&cfg, base)?;
                    summary.push(SummaryRow::new(
                        tag,
                        name.clone(),
                        run.train_accuracy(),
                        &run.outcome.test_report,
                    ));
                    runs.push(run);
                }
                results.push(StudyResult::Compare {
                    tag: tag.clone(),
                    runs,
                });
            }
            Study::Depth { tag, config, reps } => {
                let sweep = sweep_depth(config, reps, base)?;
                for row in &sweep.rows {
                    summary.push(SummaryRow::new(
                        tag,
                        format!("quantum_reps{}", row.reps.unwrap_or_default()),
                        row.train_accuracy,
                        &row.test_report,
                    ));
                }
                results.push(StudyResult::Depth {
                    tag: tag.clone(),
                    sweep,
                });
            }
            Study::KernelSweep {
                tag,
                config,
                kernels,
                learning_rates,
            } => {
                let sweep = sweep_kernels(config, kernels, learning_rates, base)?;
                for row in &sweep.rows {
                    summary.push(SummaryRow::new(
                        tag,
                        format!(
                            "{}@lr{}",
                            row.kernel.as_deref().unwrap_or_default(),
                            row.learning_rate.unwrap_or_default()
                        ),
                        row.train_accuracy,
                        &row.test_report,
                    ));
                }
                results.push(StudyResult::KernelSweep {
                    tag: tag.clone(),
                    sweep,
                });
            }
        }
    }
    Ok(SuiteReport {
        suite: suite.clone(),
        results,
        summary,
        wall_clock_seconds: elapsed_seconds(start),
    })
}

impl SuiteReport {
    /// `tag,model,train_acc,accuracy,precision,recall,f1`
    pub fn summary_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "tag",
            "model",
            "train_acc",
            "accuracy",
            "precision",
            "recall",
            "f1",
        ])?;
        for r in &self.summary {
            w.write_record([
                r.tag.clone(),
                r.model.clone(),
                r.train_accuracy.to_string(),
                r.accuracy.to_string(),
                r.precision.to_string(),
                r.recall.to_string(),
                r.f1.to_string(),
            ])?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
