use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::data::{
    fit_pca, fit_scaler, load_csv, stratified_split, Dataset, GeneratorSpec, ScalerKind, Split,
    Transform,
};
use crate::error::{invalid, Error, Result};
use crate::featuremap::{Entanglement, FeatureMapConfig, PairPhase};
use crate::kernels::{ClassicalKernelParams, ClassicalKind, KernelKind};
use crate::svm::TrainConfig;

fn default_label_column() -> String {
    "label".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetSpec {
    Csv {
        path: String,
        #[serde(default = "default_label_column")]
        label_column: String,
    },
    Generate(GeneratorSpec),
}

impl DatasetSpec {
    /// Relative CSV paths are resolved against `base`.
    pub fn load(&self, base: &Path) -> Result<Dataset> {
        match self {
            DatasetSpec::Csv { path, label_column } => {
                let p = Path::new(path);
                let full: PathBuf = if p.is_absolute() {
                    p.into()
                } else {
                    base.join(p)
                };
                load_csv(&full, label_column)
            }
            DatasetSpec::Generate(g) => g.generate(),
        }
    }
}

/// One preprocessing step; each is fitted on the training split and then
/// applied to both sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum PreprocessStep {
    Standard,
    MinMax {
        #[serde(default)]
        lo: f64,
        #[serde(default = "default_hi")]
        hi: f64,
    },
    Pca {
        k: usize,
    },
}

fn default_hi() -> f64 {
    FRAC_PI_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.8,
            seed: 42,
        }
    }
}

/// Kernel choice before the feature dimension is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelSpec {
    Quantum {
        /// Defaults to the preprocessed feature dimension.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_qubits: Option<usize>,
        reps: usize,
        entanglement: Entanglement,
        #[serde(default)]
        pair_phase: PairPhase,
    },
    Classical {
        kind: ClassicalKind,
        /// Defaults to `1/d`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coef0: Option<f64>,
    },
}

impl KernelSpec {
    pub fn classical(kind: ClassicalKind) -> Self {
        KernelSpec::Classical {
            kind,
            gamma: None,
            degree: None,
            coef0: None,
        }
    }

    pub fn quantum(reps: usize, entanglement: Entanglement) -> Self {
        KernelSpec::Quantum {
            n_qubits: None,
            reps,
            entanglement,
            pair_phase: PairPhase::ZzStandard,
        }
    }

    pub fn name(&self) -> String {
        match self {
            KernelSpec::Quantum { entanglement, .. } => match entanglement {
                Entanglement::None => "quantum".into(),
                e => format!("quantum_{e}"),
            },
            KernelSpec::Classical { kind, .. } => kind.name().into(),
        }
    }

    pub fn resolve(&self, n_features: usize) -> Result<KernelKind> {
        let kind = match *self {
            KernelSpec::Quantum {
                n_qubits,
                reps,
                entanglement,
                pair_phase,
            } => {
                let n = n_qubits.unwrap_or(n_features);
                if n != n_features {
                    return Err(invalid(format!(
                        "quantum kernel configured for {n} qubits but the data has {n_features} features"
                    )));
                }
                KernelKind::Quantum(FeatureMapConfig {
                    n_qubits: n,
                    reps,
                    entanglement,
                    pair_phase,
                })
            }
            KernelSpec::Classical {
                kind,
                gamma,
                degree,
                coef0,
            } => {
                let d = ClassicalKernelParams::with_defaults(kind, n_features);
                KernelKind::Classical(ClassicalKernelParams {
                    kind,
                    gamma: gamma.unwrap_or(d.gamma),
                    degree: degree.unwrap_or(d.degree),
                    coef0: coef0.unwrap_or(d.coef0),
                })
            }
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// Everything needed to replay one train/evaluate run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    pub dataset: DatasetSpec,
    #[serde(default)]
    pub preprocess: Vec<PreprocessStep>,
    #[serde(default)]
    pub split: SplitSpec,
    pub kernel: KernelSpec,
    #[serde(default)]
    pub train: TrainConfig,
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Split data with every preprocessing step fitted on the training side.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub split: Split,
    pub transforms: Vec<Transform>,
}

pub fn prepare(cfg: &ExperimentConfig, base: &Path) -> Result<Prepared> {
    let ds = cfg.dataset.load(base)?;
    prepare_dataset(&ds, cfg)
}

pub fn prepare_dataset(ds: &Dataset, cfg: &ExperimentConfig) -> Result<Prepared> {
    let mut split = stratified_split(ds, cfg.split.train_fraction, cfg.split.seed)?;
    let mut transforms = Vec::with_capacity(cfg.preprocess.len());
    for step in &cfg.preprocess {
        let t = match *step {
            PreprocessStep::Standard => {
                Transform::Scaler(fit_scaler(&split.train, ScalerKind::Standard, 0.0, 1.0)?)
            }
            PreprocessStep::MinMax { lo, hi } => {
                Transform::Scaler(fit_scaler(&split.train, ScalerKind::MinMax, lo, hi)?)
            }
            PreprocessStep::Pca { k } => Transform::Pca(fit_pca(&split.train, k)?),
        };
        split.train = t.apply(&split.train)?;
        split.test = t.apply(&split.test)?;
        transforms.push(t);
    }
    Ok(Prepared { split, transforms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::HardKind;

    fn xor_config() -> ExperimentConfig {
        ExperimentConfig {
            tag: Some("r".into()),
            dataset: DatasetSpec::Generate(GeneratorSpec::Hard {
                kind: HardKind::Xor,
                n_per_class: 20,
                noise: 0.0,
                seed: 3,
            }),
            preprocess: vec![PreprocessStep::MinMax {
                lo: 0.0,
                hi: FRAC_PI_2,
            }],
            split: SplitSpec::default(),
            kernel: KernelSpec::quantum(2, Entanglement::Linear),
            train: TrainConfig::default(),
        }
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let cfg = xor_config();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(
            serde_json::from_str::<ExperimentConfig>(&text).unwrap(),
            cfg
        );

        let minimal = r#"{
            "dataset": {"csv": {"path": "x.csv"}},
            "preprocess": [{"step": "min_max"}],
            "kernel": {"classical": {"kind": "rbf"}}
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(minimal).unwrap();
        assert_eq!(cfg.split, SplitSpec::default());
        assert_eq!(cfg.train, TrainConfig::default());
        assert_eq!(
            cfg.preprocess,
            vec![PreprocessStep::MinMax {
                lo: 0.0,
                hi: FRAC_PI_2
            }]
        );
        match cfg.dataset {
            DatasetSpec::Csv { label_column, .. } => assert_eq!(label_column, "label"),
            DatasetSpec::Generate(_) => panic!("expected csv"),
        }
    }

    #[test]
    fn resolve_fills_defaults_and_checks_width() {
        match KernelSpec::classical(ClassicalKind::Rbf)
            .resolve(4)
            .unwrap()
        {
            KernelKind::Classical(p) => assert_eq!(p.gamma, 0.25),
            other => panic!("unexpected {other:?}"),
        }
        let q = KernelSpec::Quantum {
            n_qubits: Some(3),
            reps: 1,
            entanglement: Entanglement::Full,
            pair_phase: PairPhase::ZzStandard,
        };
        assert!(q.resolve(2).is_err());
        assert!(q.resolve(3).is_ok());
        assert!(KernelSpec::quantum(0, Entanglement::None)
            .resolve(2)
            .is_err());
        assert_eq!(
            KernelSpec::quantum(1, Entanglement::Full).name(),
            "quantum_full"
        );
        assert_eq!(KernelSpec::quantum(1, Entanglement::None).name(), "quantum");
    }

    #[test]
    fn prepare_fits_on_train_only() {
        let cfg = xor_config();
        let p = prepare(&cfg, Path::new(".")).unwrap();
        for row in &p.split.train.x {
            for &v in row {
                assert!((0.0..=FRAC_PI_2).contains(&v));
            }
        }
        for col in 0..2 {
            let min = p
                .split
                .train
                .x
                .iter()
                .map(|r| r[col])
                .fold(f64::INFINITY, f64::min);
            let max = p
                .split
                .train
                .x
                .iter()
                .map(|r| r[col])
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(min, 0.0);
            assert!((max - FRAC_PI_2).abs() < 1e-15);
        }
        assert_eq!(p.transforms.len(), 1);
        assert_eq!(p.split.train.len() + p.split.test.len(), 40);
    }

    #[test]
    fn missing_csv_is_an_io_error() {
        let cfg = ExperimentConfig {
            dataset: DatasetSpec::Csv {
                path: "does/not/exist.csv".into(),
                label_column: "label".into(),
            },
            ..xor_config()
        };
        assert!(matches!(
            prepare(&cfg, Path::new(".")),
            Err(Error::Io { .. })
        ));
    }
}
