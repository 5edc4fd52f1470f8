//! Datasets: CSV ingestion, synthetic generators, preprocessing and
//! stratified splitting.

mod generate;
mod io;
mod preprocess;
mod split;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use generate::{gen_blobs, gen_hard, GeneratorSpec, HardKind};
pub use io::{load_csv, write_csv};
pub use preprocess::{fit_pca, fit_scaler, PcaParams, ScalerKind, ScalerParams, Transform};
pub use split::{stratified_split, Split, SplitIndices};

/// Where a dataset came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    File { path: String, label_column: String },
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub x: Vec<Vec<f64>>,
    /// Class indices into `classes`.
    pub y: Vec<usize>,
    pub feature_names: Vec<String>,
    /// Label catalog: `classes[i]` is the original name of class `i`.
    pub classes: Vec<String>,
    pub source: Source,
}

impl Dataset {
    pub fn new(
        x: Vec<Vec<f64>>,
        y: Vec<usize>,
        feature_names: Vec<String>,
        classes: Vec<String>,
        source: Source,
    ) -> Result<Self> {
        let ds = Self {
            x,
            y,
            feature_names,
            classes,
            source,
        };
        ds.validate()?;
        Ok(ds)
    }

    fn validate(&self) -> Result<()> {
        if self.x.is_empty() {
            return Err(invalid("dataset has no rows"));
        }
        if self.x.len() != self.y.len() {
            return Err(invalid(format!(
                "{} feature rows but {} labels",
                self.x.len(),
                self.y.len()
            )));
        }
        let d = self.n_features();
        if let Some(i) = self.x.iter().position(|r| r.len() != d) {
            return Err(invalid(format!(
                "row {i} has {} features, expected {d}",
                self.x[i].len()
            )));
        }
        if self.feature_names.len() != d {
            return Err(invalid(
                "feature name count does not match feature dimension",
            ));
        }
        if let Some(&bad) = self.y.iter().find(|&&l| l >= self.classes.len()) {
            return Err(invalid(format!("label {bad} outside the class catalog")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for &l in &self.y {
            counts[l] += 1;
        }
        counts
    }

    /// Rows at `idx`, in that order. The class catalog is kept whole.
    pub fn subset(&self, idx: &[usize]) -> Result<Dataset> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.len()) {
            return Err(invalid(format!("row index {bad} out of range")));
        }
        Dataset::new(
            idx.iter().map(|&i| self.x[i].clone()).collect(),
            idx.iter().map(|&i| self.y[i]).collect(),
            self.feature_names.clone(),
            self.classes.clone(),
            self.source.clone(),
        )
    }

    /// Same rows and labels with new feature columns.
    pub fn with_features(&self, x: Vec<Vec<f64>>, names: Vec<String>) -> Result<Dataset> {
        Dataset::new(
            x,
            self.y.clone(),
            names,
            self.classes.clone(),
            self.source.clone(),
        )
    }

    /// Binary labels: class 1 → `+1`, everything else → `−1`.
    pub fn signed_labels(&self) -> Vec<i8> {
        self.y
            .iter()
            .map(|&l| if l == 1 { 1 } else { -1 })
            .collect()
    }
}
