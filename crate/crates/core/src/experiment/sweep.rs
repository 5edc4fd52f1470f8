use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, KernelSpec};
use super::run::{run_train_eval, TrainEvalResult};
use crate::error::{invalid, Result};
use crate::featuremap::Entanglement;
use crate::kernels::ClassicalKind;
use crate::metrics::EvalReport;
use crate::svm::Trainer;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub train_report: EvalReport,
    pub test_report: EvalReport,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Depth,
    Kernels,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub config: ExperimentConfig,
    pub rows: Vec<SweepRow>,
}

fn row_from(result: &TrainEvalResult) -> SweepRow {
    SweepRow {
        reps: None,
        kernel: None,
        learning_rate: None,
        train_accuracy: result.train_accuracy(),
        test_accuracy: result.test_accuracy(),
        train_report: result.outcome.train_report.clone(),
        test_report: result.outcome.test_report.clone(),
        wall_clock_seconds: result.wall_clock_seconds,
    }
}

/// One run per `reps` value on a fixed split. The config's kernel must be
/// quantum; its `reps` is overridden per grid point.
pub fn sweep_depth(
    cfg: &ExperimentConfig,
    reps_list: &[usize],
    base: &Path,
) -> Result<SweepResult> {
    if reps_list.is_empty() {
        return Err(invalid("reps list is empty"));
    }
    for (i, r) in reps_list.iter().enumerate() {
        if reps_list[..i].contains(r) {
            return Err(invalid(format!("reps value {r} appears more than once")));
        }
    }
    if !matches!(cfg.kernel, KernelSpec::Quantum { .. }) {
        return Err(invalid("depth sweep needs a quantum kernel"));
    }
    let rows = reps_list
        .par_iter()
        .map(|&reps| {
            let mut point = cfg.clone();
            if let KernelSpec::Quantum { reps: r, .. } = &mut point.kernel {
                *r = reps;
            }
            let result = run_train_eval(&point, base)?;
            Ok(SweepRow {
                reps: Some(reps),
                ..row_from(&result)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        kind: SweepKind::Depth,
        config: cfg.clone(),
        rows,
    })
}

/// Kernel names accepted by [`sweep_kernels`]: the classical kinds plus
/// `quantum` (no entanglement) and `quantum_linear` / `quantum_full`.
pub fn kernel_by_name(name: &str, base: &KernelSpec) -> Result<KernelSpec> {
    let reps = match base {
        KernelSpec::Quantum { reps, .. } => *reps,
        KernelSpec::Classical { .. } => 2,
    };
    match name {
        "quantum" => Ok(KernelSpec::quantum(reps, Entanglement::None)),
        "quantum_linear" => Ok(KernelSpec::quantum(reps, Entanglement::Linear)),
        "quantum_full" => Ok(KernelSpec::quantum(reps, Entanglement::Full)),
        other => {
            let kind: ClassicalKind = other.parse().map_err(|_| {
                invalid(format!(
                    "unknown kernel '{other}' (expected quantum, quantum_linear, quantum_full, linear, poly, rbf or sigmoid)"
                ))
            })?;
            match *base {
                KernelSpec::Classical {
                    kind: k,
                    gamma,
                    degree,
                    coef0,
                } if k == kind => Ok(KernelSpec::Classical {
                    kind,
                    gamma,
                    degree,
                    coef0,
                }),
                _ => Ok(KernelSpec::classical(kind)),
            }
        }
    }
}

/// Kernel × learning-rate grid trained with the SGD trainer. Rows follow
/// grid order: kernels outer, learning rates inner.
pub fn sweep_kernels(
    cfg: &ExperimentConfig,
    kernels: &[String],
    learning_rates: &[f64],
    base: &Path,
) -> Result<SweepResult> {
    if kernels.is_empty() || learning_rates.is_empty() {
        return Err(invalid("kernel sweep grid is empty"));
    }
    if let Some(lr) = learning_rates.iter().find(|&&lr| lr.is_nan() || lr <= 0.0) {
        return Err(invalid(format!("learning rate must be positive, got {lr}")));
    }
    let specs = kernels
        .iter()
        .map(|k| kernel_by_name(k, &cfg.kernel).map(|s| (k.clone(), s)))
        .collect::<Result<Vec<_>>>()?;
    let grid: Vec<(String, KernelSpec, f64)> = specs
        .iter()
        .flat_map(|(name, spec)| {
            learning_rates
                .iter()
                .map(move |&lr| (name.clone(), *spec, lr))
        })
        .collect();
    let rows = grid
        .par_iter()
        .map(|(name, spec, lr)| {
            let mut point = cfg.clone();
            point.kernel = *spec;
            point.train.trainer = Trainer::Sgd;
            point.train.learning_rate = *lr;
            let result = run_train_eval(&point, base)?;
            Ok(SweepRow {
                kernel: Some(name.clone()),
                learning_rate: Some(*lr),
                ..row_from(&result)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut config = cfg.clone();
    config.train.trainer = Trainer::Sgd;
    Ok(SweepResult {
        kind: SweepKind::Kernels,
        config,
        rows,
    })
}

impl SweepResult {
    /// Deterministic CSV: `reps,train_acc,test_acc` for depth sweeps and
    /// `kernel,learning_rate,train_acc,test_acc` for kernel sweeps.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match self.kind {
            SweepKind::Depth => {
                w.write_record(["reps", "train_acc", "test_acc"])?;
                for r in &self.rows {
                    w.write_record([
                        r.reps.unwrap_or_default().to_string(),
                        r.train_accuracy.to_string(),
                        r.test_accuracy.to_string(),
                    ])?;
                }
            }
            SweepKind::Kernels => {
                w.write_record(["kernel", "learning_rate", "train_acc", "test_acc"])?;
                for r in &self.rows {
                    w.write_record([
                        r.kernel.clone().unwrap_or_default(),
                        r.learning_rate.unwrap_or_default().to_string(),
                        r.train_accuracy.to_string(),
                        r.test_accuracy.to_string(),
                    ])?;
                }
            }
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
