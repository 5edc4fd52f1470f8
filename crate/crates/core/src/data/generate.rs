use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{Dataset, Source};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HardKind {
    Xor,
    Rings,
    NoisyLabels,
}

impl std::str::FromStr for HardKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xor" => Ok(HardKind::Xor),
            "rings" => Ok(HardKind::Rings),
            "noisy_labels" => Ok(HardKind::NoisyLabels),
            other => Err(invalid(format!(
                "unknown dataset kind '{other}' (expected xor, rings or noisy_labels)"
            ))),
        }
    }
}

/// Replayable generator descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSpec {
    Blobs {
        n_per_class: usize,
        centers: Vec<Vec<f64>>,
        spread: f64,
        seed: u64,
    },
    Hard {
        kind: HardKind,
        n_per_class: usize,
        noise: f64,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Dataset> {
        match self {
            GeneratorSpec::Blobs {
                n_per_class,
                centers,
                spread,
                seed,
            } => gen_blobs(*n_per_class, centers, *spread, *seed),
            GeneratorSpec::Hard {
                kind,
                n_per_class,
                noise,
                seed,
            } => gen_hard(*n_per_class, *kind, *noise, *seed),
        }
    }
}

fn finish(
    x: Vec<Vec<f64>>,
    y: Vec<usize>,
    n_classes: usize,
    spec: GeneratorSpec,
) -> Result<Dataset> {
    let d = x.first().map_or(0, Vec::len);
    Dataset::new(
        x,
        y,
        (0..d).map(|i| format!("f{}", i + 1)).collect(),
        (0..n_classes).map(|c| c.to_string()).collect(),
        Source::Generator(spec),
    )
}

/// Isotropic Gaussian clusters, `n_per_class` points around each center,
/// emitted class by class.
pub fn gen_blobs(
    n_per_class: usize,
    centers: &[Vec<f64>],
    spread: f64,
    seed: u64,
) -> Result<Dataset> {
    if centers.len() < 2 {
        return Err(invalid("blobs need at least two centers"));
    }
    if !(spread > 0.0 && spread.is_finite()) {
        return Err(invalid(format!("spread must be positive, got {spread}")));
    }
    if n_per_class == 0 {
        return Err(invalid("n_per_class must be positive"));
    }
    let d = centers[0].len();
    if d == 0
        || centers
            .iter()
            .any(|c| c.len() != d || c.iter().any(|v| !v.is_finite()))
    {
        return Err(invalid(
            "centers must be finite and share one nonzero dimension",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, spread).expect("spread validated");
    let mut x = Vec::with_capacity(n_per_class * centers.len());
    let mut y = Vec::with_capacity(x.capacity());
    for (class, center) in centers.iter().enumerate() {
        for _ in 0..n_per_class {
            x.push(center.iter().map(|c| c + noise.sample(&mut rng)).collect());
            y.push(class);
        }
    }
    finish(
        x,
        y,
        centers.len(),
        GeneratorSpec::Blobs {
            n_per_class,
            centers: centers.to_vec(),
            spread,
            seed,
        },
    )
}

/// Two-class 2-D problems a linear boundary cannot solve.
///
/// - `Xor`: uniform points in `[-1, 1]²`; class 1 holds the quadrants where
///   the coordinates have opposite signs. Each class is split evenly between
///   its two quadrants. `noise` is Gaussian jitter added after labeling.
/// - `Rings`: class 0 inside radius 1, class 1 in the annulus 1.5–2.5;
///   `noise` is jitter as above.
/// - `NoisyLabels`: unit-spread blobs at `(-1,-1)` and `(1,1)` with a
///   fraction `noise` of labels flipped.
pub fn gen_hard(n_per_class: usize, kind: HardKind, noise: f64, seed: u64) -> Result<Dataset> {
    if n_per_class < 10 {
        return Err(invalid(format!(
            "n_per_class must be at least 10, got {n_per_class}"
        )));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(invalid(format!("noise must be non-negative, got {noise}")));
    }
    if kind == HardKind::NoisyLabels && noise > 1.0 {
        return Err(invalid("label-flip fraction must be at most 1"));
    }
    let spec = GeneratorSpec::Hard {
        kind,
        n_per_class,
        noise,
        seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<Vec<f64>> = Vec::with_capacity(2 * n_per_class);
    let mut y = Vec::with_capacity(2 * n_per_class);

    match kind {
        HardKind::Xor | HardKind::Rings => {
            for class in 0..2 {
                for i in 0..n_per_class {
                    let p = if kind == HardKind::Xor {
                        let (mut a, mut b) = (rng.random::<f64>(), rng.random::<f64>());
                        // alternate between the class's two quadrants
                        let flip = i % 2 == 1;
                        if flip {
                            a = -a;
                        }
                        // class 0: same signs, class 1: opposite signs
                        if (class == 1) != flip {
                            b = -b;
                        }
                        vec![a, b]
                    } else {
                        let (r_lo, r_hi) = if class == 0 { (0.0, 1.0) } else { (1.5, 2.5) };
                        let r = rng.random_range(r_lo..r_hi);
                        let theta = rng.random_range(0.0..TAU);
                        vec![r * theta.cos(), r * theta.sin()]
                    };
                    x.push(p);
                    y.push(class);
                }
            }
            if noise > 0.0 {
                let jitter = Normal::new(0.0, noise).expect("noise validated");
                for v in x.iter_mut().flatten() {
                    *v += jitter.sample(&mut rng);
                }
            }
        }
        HardKind::NoisyLabels => {
            let unit = Normal::new(0.0, 1.0).expect("unit normal");
            for (class, c) in [-1.0, 1.0].into_iter().enumerate() {
                for _ in 0..n_per_class {
                    x.push(vec![c + unit.sample(&mut rng), c + unit.sample(&mut rng)]);
                    y.push(class);
                }
            }
            let n_flip = (noise * y.len() as f64).round() as usize;
            let mut idx: Vec<usize> = (0..y.len()).collect();
            idx.shuffle(&mut rng);
            for &i in &idx[..n_flip] {
                y[i] = 1 - y[i];
            }
            if !(y.contains(&0) && y.contains(&1)) {
                return Err(invalid("label flipping emptied a class"));
            }
        }
    }
    finish(x, y, 2, spec)
}
