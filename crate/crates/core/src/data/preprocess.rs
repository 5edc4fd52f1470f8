use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalerKind {
    MinMax,
    Standard,
}

/// Per-feature affine scaling fitted on a training split.
///
/// Min-max maps the training `[min, max]` onto `[lo, hi]`; values outside
/// the training range are extrapolated, not clipped. Constant features map to
/// `lo` (min-max) or `0` (standard).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalerParams {
    pub kind: ScalerKind,
    /// `(min, max)` for min-max, `(mean, stddev)` for standard.
    pub stats: Vec<(f64, f64)>,
    pub lo: f64,
    pub hi: f64,
}

pub fn fit_scaler(train: &Dataset, kind: ScalerKind, lo: f64, hi: f64) -> Result<ScalerParams> {
    if train.is_empty() {
        return Err(invalid("cannot fit a scaler on an empty dataset"));
    }
    if kind == ScalerKind::MinMax && !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(invalid(format!(
            "min-max target range [{lo}, {hi}] is empty"
        )));
    }
    let m = train.len() as f64;
    let stats = (0..train.n_features())
        .map(|f| {
            let col = train.x.iter().map(|r| r[f]);
            match kind {
                ScalerKind::MinMax => col.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                    (a.min(v), b.max(v))
                }),
                ScalerKind::Standard => {
                    let mean = col.clone().sum::<f64>() / m;
                    let var = col.map(|v| (v - mean) * (v - mean)).sum::<f64>() / m;
                    (mean, var.sqrt())
                }
            }
        })
        .collect();
    Ok(ScalerParams {
        kind,
        stats,
        lo,
        hi,
    })
}

impl ScalerParams {
    pub fn apply(&self, x: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        x.iter()
            .map(|row| {
                if row.len() != self.stats.len() {
                    return Err(invalid(format!(
                        "row has {} features, scaler was fitted on {}",
                        row.len(),
                        self.stats.len()
                    )));
                }
                Ok(row
                    .iter()
                    .zip(&self.stats)
                    .map(|(&v, &(a, b))| self.scale(v, a, b))
                    .collect())
            })
            .collect()
    }

    fn scale(&self, v: f64, a: f64, b: f64) -> f64 {
        match self.kind {
            ScalerKind::MinMax => {
                let range = b - a;
                if range == 0.0 {
                    self.lo
                } else {
                    self.lo + (v - a) / range * (self.hi - self.lo)
                }
            }
            ScalerKind::Standard => {
                if b == 0.0 {
                    0.0
                } else {
                    (v - a) / b
                }
            }
        }
    }
}

/// Principal-component projection fitted on a training split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaParams {
    pub k: usize,
    pub mean: Vec<f64>,
    /// `k` orthonormal directions, largest variance first. Each is signed so
    /// its largest-magnitude entry is positive.
    pub components: Vec<Vec<f64>>,
    pub explained_variance: Vec<f64>,
}

pub fn fit_pca(train: &Dataset, k: usize) -> Result<PcaParams> {
    let d = train.n_features();
    if k == 0 || k > d {
        return Err(invalid(format!("PCA needs 1 <= k <= {d}, got k = {k}")));
    }
    let m = train.len();
    if m < 2 {
        return Err(invalid("PCA needs at least two training rows"));
    }
    let mean: Vec<f64> = (0..d)
        .map(|f| train.x.iter().map(|r| r[f]).sum::<f64>() / m as f64)
        .collect();
    let centered = DMatrix::from_fn(m, d, |i, j| train.x[i][j] - mean[j]);
    let cov = (centered.transpose() * &centered) / (m - 1) as f64;
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .total_cmp(&eig.eigenvalues[a])
            .then(a.cmp(&b))
    });

    let components = order[..k]
        .iter()
        .map(|&c| {
            let mut v: Vec<f64> = eig.eigenvectors.column(c).iter().copied().collect();
            let pivot =
                v.iter().enumerate().fold(
                    0,
                    |best, (i, x)| if x.abs() > v[best].abs() { i } else { best },
                );
            if v[pivot] < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect();
    let explained_variance = order[..k]
        .iter()
        .map(|&c| eig.eigenvalues[c].max(0.0))
        .collect();
    Ok(PcaParams {
        k,
        mean,
        components,
        explained_variance,
    })
}

impl PcaParams {
    pub fn apply(&self, x: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        x.iter()
            .map(|row| {
                if row.len() != self.mean.len() {
                    return Err(invalid(format!(
                        "row has {} features, PCA was fitted on {}",
                        row.len(),
                        self.mean.len()
                    )));
                }
                Ok(self
                    .components
                    .iter()
                    .map(|c| {
                        row.iter()
                            .zip(&self.mean)
                            .zip(c)
                            .map(|((v, mu), w)| (v - mu) * w)
                            .sum()
                    })
                    .collect())
            })
            .collect()
    }

    /// Maps projected rows back into the original feature space.
    pub fn reconstruct(&self, z: &[Vec<f64>]) -> Vec<Vec<f64>> {
        z.iter()
            .map(|row| {
                let mut out = self.mean.clone();
                for (coef, comp) in row.iter().zip(&self.components) {
                    for (o, w) in out.iter_mut().zip(comp) {
                        *o += coef * w;
                    }
                }
                out
            })
            .collect()
    }
}

/// A fitted preprocessing step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Scaler(ScalerParams),
    Pca(PcaParams),
}

impl Transform {
    pub fn apply(&self, ds: &Dataset) -> Result<Dataset> {
        match self {
            Transform::Scaler(p) => ds.with_features(p.apply(&ds.x)?, ds.feature_names.clone()),
            Transform::Pca(p) => ds.with_features(
                p.apply(&ds.x)?,
                (1..=p.k).map(|i| format!("pc{i}")).collect(),
            ),
        }
    }
}
