use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use qksvm_core::experiment::{
    kernel_by_name, DatasetSpec, ExperimentConfig, KernelSpec, PreprocessStep, SplitSpec,
};
use qksvm_core::featuremap::Entanglement;
use qksvm_core::svm::{TrainConfig, Trainer};

use crate::args::{ConfigArgs, TrainerArg};
use crate::{CliError, CliResult};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_step(s: &str) -> CliResult<PreprocessStep> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| usage(format!("bad number '{t}' in preprocess step '{s}'")))
    };
    match parts.as_slice() {
        ["standard"] => Ok(PreprocessStep::Standard),
        ["minmax"] => Ok(PreprocessStep::MinMax {
            lo: 0.0,
            hi: FRAC_PI_2,
        }),
        ["minmax", lo, hi] => Ok(PreprocessStep::MinMax {
            lo: num(lo)?,
            hi: num(hi)?,
        }),
        ["pca", k] => Ok(PreprocessStep::Pca {
            k: k.parse()
                .map_err(|_| usage(format!("bad component count in '{s}'")))?,
        }),
        _ => Err(usage(format!(
            "unknown preprocess step '{s}' (expected standard, minmax, minmax:LO:HI or pca:K)"
        ))),
    }
}

pub fn parse_preprocess(s: &str) -> CliResult<Vec<PreprocessStep>> {
    if s.trim() == "none" || s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_step).collect()
}

/// Builds the experiment config from `--config` (if any) with flags applied
/// on top, and the directory relative dataset paths resolve against.
/// `reps` is applied only when `apply_reps` is set (single-run commands).
pub fn build_config(a: &ConfigArgs, apply_reps: bool) -> CliResult<(ExperimentConfig, PathBuf)> {
    let (mut cfg, base) = match &a.config {
        Some(path) => {
            let cfg = ExperimentConfig::from_file(path)?;
            let base = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .map_or_else(|| PathBuf::from("."), Path::to_path_buf);
            (cfg, base)
        }
        None => {
            let Some(data) = &a.data else {
                return Err(usage("no dataset: pass --config or --data"));
            };
            let cfg = ExperimentConfig {
                tag: None,
                dataset: DatasetSpec::Csv {
                    path: data.to_string_lossy().into_owned(),
                    label_column: "label".into(),
                },
                preprocess: vec![PreprocessStep::MinMax {
                    lo: 0.0,
                    hi: FRAC_PI_2,
                }],
                split: SplitSpec::default(),
                kernel: KernelSpec::quantum(2, Entanglement::Linear),
                train: TrainConfig::default(),
            };
            (cfg, PathBuf::from("."))
        }
    };

    if a.config.is_some() {
        if let Some(data) = &a.data {
            let abs = std::env::current_dir()
                .map_err(|e| qksvm_core::Error::io(".", e))?
                .join(data);
            let label_column = match &cfg.dataset {
                DatasetSpec::Csv { label_column, .. } => label_column.clone(),
                DatasetSpec::Generate(_) => "label".into(),
            };
            cfg.dataset = DatasetSpec::Csv {
                path: abs.to_string_lossy().into_owned(),
                label_column,
            };
        }
    }
    if let Some(col) = &a.label_column {
        match &mut cfg.dataset {
            DatasetSpec::Csv { label_column, .. } => *label_column = col.clone(),
            DatasetSpec::Generate(_) => {
                return Err(usage("--label-column applies only to CSV datasets"))
            }
        }
    }
    if let Some(tag) = &a.tag {
        cfg.tag = Some(tag.clone());
    }
    if let Some(p) = &a.preprocess {
        cfg.preprocess = parse_preprocess(p)?;
    }
    if let Some(f) = a.train_fraction {
        cfg.split.train_fraction = f;
    }
    if let Some(s) = a.split_seed {
        cfg.split.seed = s;
    }

    if let Some(name) = &a.kernel {
        cfg.kernel = kernel_by_name(name, &cfg.kernel).map_err(|e| usage(e.to_string()))?;
    }
    if apply_reps && !a.reps.is_empty() {
        let [value] = a.reps[..] else {
            return Err(usage("--reps takes a single value for this command"));
        };
        match &mut cfg.kernel {
            KernelSpec::Quantum { reps, .. } => *reps = value,
            KernelSpec::Classical { .. } => return Err(usage("--reps needs a quantum kernel")),
        }
    }
    if a.gamma.is_some() || a.degree.is_some() || a.coef0.is_some() {
        match &mut cfg.kernel {
            KernelSpec::Classical {
                gamma,
                degree,
                coef0,
                ..
            } => {
                if a.gamma.is_some() {
                    *gamma = a.gamma;
                }
                if a.degree.is_some() {
                    *degree = a.degree;
                }
                if a.coef0.is_some() {
                    *coef0 = a.coef0;
                }
            }
            KernelSpec::Quantum { .. } => {
                return Err(usage("--gamma/--degree/--coef0 need a classical kernel"))
            }
        }
    }

    let t = &mut cfg.train;
    if let Some(c) = a.c {
        t.c = c;
    }
    if let Some(tol) = a.tol {
        t.tol = tol;
    }
    if let Some(p) = a.max_passes {
        t.max_passes = p;
    }
    if let Some(s) = a.seed {
        t.seed = s;
    }
    if let Some(tr) = a.trainer {
        t.trainer = match tr {
            TrainerArg::Smo => Trainer::Smo,
            TrainerArg::Sgd => Trainer::Sgd,
        };
    }
    if let Some(lr) = a.learning_rate {
        t.learning_rate = lr;
    }
    if let Some(e) = a.epochs {
        t.epochs = e;
    }
    Ok((cfg, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preprocess_list() {
        let steps = parse_preprocess("standard,pca:2,minmax:0:1").unwrap();
        assert_eq!(
            steps,
            vec![
                PreprocessStep::Standard,
                PreprocessStep::Pca { k: 2 },
                PreprocessStep::MinMax { lo: 0.0, hi: 1.0 }
            ]
        );
        assert!(parse_preprocess("none").unwrap().is_empty());
        assert!(parse_preprocess("pca").is_err());
        assert!(parse_preprocess("zscore").is_err());
    }
}
