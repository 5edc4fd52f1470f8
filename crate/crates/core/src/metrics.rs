//! Confusion-matrix based classification metrics.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Averaging {
    /// Scores of class 1 (the positive class).
    Binary,
    /// Unweighted mean over classes.
    Macro,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// `confusion[true][predicted]`
    pub confusion: Vec<Vec<usize>>,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub averaging: Averaging,
    pub per_class: Vec<ClassScores>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Zero denominators score 0 rather than being undefined.
pub fn evaluate(y_true: &[usize], y_pred: &[usize], n_classes: usize) -> Result<EvalReport> {
    if y_true.len() != y_pred.len() {
        return Err(invalid(format!(
            "{} true labels but {} predictions",
            y_true.len(),
            y_pred.len()
        )));
    }
    if y_true.is_empty() {
        return Err(invalid("cannot evaluate zero samples"));
    }
    if n_classes == 0 {
        return Err(invalid("n_classes must be positive"));
    }
    if let Some(&bad) = y_true.iter().chain(y_pred).find(|&&l| l >= n_classes) {
        return Err(invalid(format!("label {bad} is outside 0..{n_classes}")));
    }

    let mut confusion = vec![vec![0usize; n_classes]; n_classes];
    for (&t, &p) in y_true.iter().zip(y_pred) {
        confusion[t][p] += 1;
    }

    let total = y_true.len();
    let trace: usize = (0..n_classes).map(|c| confusion[c][c]).sum();
    let per_class: Vec<ClassScores> = (0..n_classes)
        .map(|c| {
            let tp = confusion[c][c];
            let predicted: usize = confusion.iter().map(|row| row[c]).sum();
            let actual: usize = confusion[c].iter().sum();
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, actual);
            ClassScores {
                precision,
                recall,
                f1: harmonic(precision, recall),
                support: actual,
            }
        })
        .collect();

    let (averaging, precision, recall, f1) = if n_classes == 2 {
        let pos = &per_class[1];
        (Averaging::Binary, pos.precision, pos.recall, pos.f1)
    } else {
        let n = n_classes as f64;
        (
            Averaging::Macro,
            per_class.iter().map(|s| s.precision).sum::<f64>() / n,
            per_class.iter().map(|s| s.recall).sum::<f64>() / n,
            per_class.iter().map(|s| s.f1).sum::<f64>() / n,
        )
    };

    Ok(EvalReport {
        confusion,
        accuracy: ratio(trace, total),
        precision,
        recall,
        f1,
        averaging,
        per_class,
    })
}

/// Maps `±1` labels to class indices `0` / `1`.
pub fn binary_to_class(labels: &[i8]) -> Vec<usize> {
    labels.iter().map(|&l| usize::from(l > 0)).collect()
}
