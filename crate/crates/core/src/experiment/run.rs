use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{prepare, ExperimentConfig, Prepared};
use crate::data::SplitIndices;
use crate::data::Transform;
use crate::error::{invalid, Result};
use crate::kernels::{psd_report, KernelKind, KernelMatrix, PsdReport};
use crate::metrics::{binary_to_class, evaluate, EvalReport};
use crate::svm::{train, train_multiclass, MulticlassModel, SvmModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrainedModel {
    Binary(SvmModel),
    Multiclass(MulticlassModel),
}

impl TrainedModel {
    pub fn predict(&self, rows: &[Vec<f64>]) -> Result<Vec<usize>> {
        match self {
            TrainedModel::Binary(m) => Ok(binary_to_class(&m.predict(rows)?)),
            TrainedModel::Multiclass(m) => m.predict(rows),
        }
    }
}

/// Deterministic part of a train/evaluate run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub kernel: KernelKind,
    pub classes: Vec<String>,
    pub split: SplitIndices,
    pub transforms: Vec<Transform>,
    pub gram_psd: PsdReport,
    pub train_report: EvalReport,
    pub test_report: EvalReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainEvalResult {
    pub config: ExperimentConfig,
    pub outcome: Outcome,
    pub model: TrainedModel,
    pub wall_clock_seconds: f64,
}

impl TrainEvalResult {
    pub fn train_accuracy(&self) -> f64 {
        self.outcome.train_report.accuracy
    }

    pub fn test_accuracy(&self) -> f64 {
        self.outcome.test_report.accuracy
    }
}

pub(crate) fn elapsed_seconds(start: Instant) -> f64 {
    start.elapsed().as_secs_f64().max(1e-9)
}

/// Loads the dataset, splits, preprocesses, builds the training Gram and
/// the test-versus-train kernel rows, trains and evaluates.
pub fn run_train_eval(cfg: &ExperimentConfig, base: &Path) -> Result<TrainEvalResult> {
    let start = Instant::now();
    let prepared = prepare(cfg, base)?;
    let kernel = cfg.kernel.resolve(prepared.split.train.n_features())?;
    let gram = kernel.gram(&prepared.split.train.x)?;
    let test_rows = kernel.cross(&prepared.split.test.x, &prepared.split.train.x)?;
    finish(cfg, prepared, kernel, &gram, &test_rows, start)
}

/// Like [`run_train_eval`] but takes kernel values from a precomputed Gram
/// over the whole dataset (row order of the dataset file).
pub fn run_train_eval_with_gram(
    cfg: &ExperimentConfig,
    base: &Path,
    full: &KernelMatrix,
) -> Result<TrainEvalResult> {
    let start = Instant::now();
    let prepared = prepare(cfg, base)?;
    let m = prepared.split.indices.train.len() + prepared.split.indices.test.len();
    if full.size() != m {
        return Err(invalid(format!(
            "kernel file is {}×{} but the dataset has {m} rows",
            full.size(),
            full.size()
        )));
    }
    let expected = cfg.kernel.resolve(prepared.split.train.n_features())?;
    if *full.kind() != expected {
        return Err(invalid(format!(
            "kernel file was computed with {} but the config asks for {}",
            serde_json::to_string(full.kind())?,
            serde_json::to_string(&expected)?
        )));
    }
    let idx = &prepared.split.indices;
    let gram = full.select(&idx.train)?;
    let test_rows = full.block(&idx.test, &idx.train)?;
    let kernel = *full.kind();
    finish(cfg, prepared, kernel, &gram, &test_rows, start)
}

fn finish(
    cfg: &ExperimentConfig,
    prepared: Prepared,
    kernel: KernelKind,
    gram: &KernelMatrix,
    test_rows: &[Vec<f64>],
    start: Instant,
) -> Result<TrainEvalResult> {
    let Prepared { split, transforms } = prepared;
    let n_classes = split.train.n_classes();
    let gram_psd = psd_report(gram)?;

    let model = if n_classes == 2 {
        TrainedModel::Binary(train(gram, &split.train.signed_labels(), &cfg.train)?)
    } else {
        TrainedModel::Multiclass(train_multiclass(gram, &split.train.y, &cfg.train)?)
    };

    let train_rows: Vec<Vec<f64>> = gram.rows().map(<[f64]>::to_vec).collect();
    let train_pred = model.predict(&train_rows)?;
    let test_pred = model.predict(test_rows)?;
    let train_report = evaluate(&split.train.y, &train_pred, n_classes)?;
    let test_report = evaluate(&split.test.y, &test_pred, n_classes)?;

    Ok(TrainEvalResult {
        config: cfg.clone(),
        outcome: Outcome {
            kernel,
            classes: split.train.classes.clone(),
            split: split.indices,
            transforms,
            gram_psd,
            train_report,
            test_report,
        },
        model,
        wall_clock_seconds: elapsed_seconds(start),
    })
}
