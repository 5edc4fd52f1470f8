use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train: Dataset,
    pub test: Dataset,
    pub indices: SplitIndices,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Per-class split: each class contributes `round(fraction·count)` rows to
/// the training side, clamped so both sides keep at least one. Index lists
/// are returned in ascending order.
pub fn stratified_split(ds: &Dataset, train_fraction: f64, seed: u64) -> Result<Split> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(invalid(format!(
            "train fraction must be in (0, 1), got {train_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in 0..ds.n_classes() {
        let mut members: Vec<usize> = (0..ds.len()).filter(|&i| ds.y[i] == class).collect();
        let n = members.len();
        if n == 0 {
            continue;
        }
        if n < 2 {
            return Err(invalid(format!(
                "class '{}' has {n} sample; stratified splitting needs at least 2",
                ds.classes[class]
            )));
        }
        members.shuffle(&mut rng);
        let n_train = ((train_fraction * n as f64).round() as usize).clamp(1, n - 1);
        train.extend_from_slice(&members[..n_train]);
        test.extend_from_slice(&members[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(Split {
        train: ds.subset(&train)?,
        test: ds.subset(&test)?,
        indices: SplitIndices { train, test },
    })
}
