//! SVM training on precomputed kernel matrices.
//!
//! Two trainers share the [`SvmModel`] decision form
//! `f(x) = Σ_i α_i·y_i·K(x_i, x) + b`:
//!
//! - [`train_smo`]: simplified SMO on the box-constrained dual. The second
//!   index is drawn from a seeded generator; when that pair cannot make
//!   progress the solver falls back to the largest `|E_i − E_j|` partner and
//!   then to a sweep over all partners.
//! - [`train_sgd`]: kernelized hinge-loss subgradient descent with a fixed
//!   learning rate. The bias is learned through the augmented kernel
//!   `K + 1`, so the stored bias is `Σ_j β_j·y_j`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::kernels::{psd_report, KernelKind, KernelMatrix};

/// Coefficients within `ALPHA_EPS·C` of a bound are treated as on it.
const ALPHA_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trainer {
    Smo,
    Sgd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    #[serde(rename = "C")]
    pub c: f64,
    pub tol: f64,
    pub max_passes: usize,
    pub seed: u64,
    pub trainer: Trainer,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            tol: 1e-3,
            max_passes: 50,
            seed: 0,
            trainer: Trainer::Smo,
            learning_rate: 0.1,
            epochs: 100,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(invalid(format!("C must be positive, got {}", self.c)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_passes == 0 {
            return Err(invalid("max_passes must be at least 1"));
        }
        if self.trainer == Trainer::Sgd {
            if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
                return Err(invalid(format!(
                    "learning_rate must be positive, got {}",
                    self.learning_rate
                )));
            }
            if self.epochs == 0 {
                return Err(invalid("epochs must be at least 1"));
            }
        }
        Ok(())
    }
}

/// How a model was produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub trainer: Trainer,
    pub seed: u64,
    /// SMO sweeps over the data, or SGD epochs.
    pub passes: usize,
    /// Successful pair updates (SMO) or samples visited (SGD).
    pub updates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub alphas: Vec<f64>,
    pub labels: Vec<i8>,
    pub bias: f64,
    pub support_indices: Vec<usize>,
    #[serde(rename = "C")]
    pub c: f64,
    pub kernel: KernelKind,
    pub provenance: Provenance,
}

impl SvmModel {
    pub fn n_train(&self) -> usize {
        self.alphas.len()
    }

    pub fn decision_value(&self, k_row: &[f64]) -> Result<f64> {
        if k_row.len() != self.alphas.len() {
            return Err(invalid(format!(
                "kernel row has {} entries but the model has {} training points",
                k_row.len(),
                self.alphas.len()
            )));
        }
        Ok(self
            .alphas
            .iter()
            .zip(&self.labels)
            .zip(k_row)
            .map(|((a, &y), k)| a * f64::from(y) * k)
            .sum::<f64>()
            + self.bias)
    }

    pub fn decision_values(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|r| self.decision_value(r)).collect()
    }

    /// Sign of the decision value per row; zero maps to `+1`.
    pub fn predict(&self, rows: &[Vec<f64>]) -> Result<Vec<i8>> {
        Ok(self
            .decision_values(rows)?
            .into_iter()
            .map(sign_label)
            .collect())
    }

    /// Dual objective `Σα − ½ΣΣ α_i α_j y_i y_j K_ij` on the training Gram.
    pub fn dual_objective(&self, k: &KernelMatrix) -> f64 {
        dual_objective(k, &self.alphas, &self.labels)
    }
}

pub fn sign_label(f: f64) -> i8 {
    if f >= 0.0 {
        1
    } else {
        -1
    }
}

fn dual_objective(k: &KernelMatrix, alphas: &[f64], labels: &[i8]) -> f64 {
    let m = alphas.len();
    let mut quad = 0.0;
    for i in 0..m {
        if alphas[i] == 0.0 {
            continue;
        }
        let yi = f64::from(labels[i]);
        for j in 0..m {
            quad += alphas[i] * alphas[j] * yi * f64::from(labels[j]) * k.get(i, j);
        }
    }
    alphas.iter().sum::<f64>() - 0.5 * quad
}

fn check_binary_problem(k: &KernelMatrix, y: &[i8]) -> Result<()> {
    if k.size() != y.len() {
        return Err(invalid(format!(
            "kernel is {}×{} but there are {} labels",
            k.size(),
            k.size(),
            y.len()
        )));
    }
    if let Some(bad) = y.iter().find(|&&l| l != 1 && l != -1) {
        return Err(invalid(format!("binary labels must be ±1, got {bad}")));
    }
    if !(y.contains(&1) && y.contains(&-1)) {
        return Err(invalid("training labels contain a single class"));
    }
    Ok(())
}

fn check_psd(k: &KernelMatrix) -> Result<()> {
    let report = psd_report(k)?;
    if !report.is_psd {
        return Err(invalid(format!(
            "kernel matrix is not positive semidefinite (min eigenvalue {:e})",
            report.min_eigenvalue
        )));
    }
    Ok(())
}

fn support_of(alphas: &[f64], c: f64) -> Vec<usize> {
    alphas
        .iter()
        .enumerate()
        .filter(|(_, &a)| a.max(0.0) > ALPHA_EPS * c)
        .map(|(i, _)| i)
        .collect()
}

/// Result of an SMO run with the dual objective recorded after every
/// successful pair update.
#[derive(Debug, Clone)]
pub struct SmoTrace {
    pub objective: Vec<f64>,
}

pub fn train_smo(k: &KernelMatrix, y: &[i8], cfg: &TrainConfig) -> Result<SvmModel> {
    cfg.validate()?;
    check_binary_problem(k, y)?;
    check_psd(k)?;
    Ok(Smo::new(k, y, cfg, false).run())
}

/// [`train_smo`] that also returns the dual objective history.
pub fn train_smo_traced(
    k: &KernelMatrix,
    y: &[i8],
    cfg: &TrainConfig,
) -> Result<(SvmModel, SmoTrace)> {
    cfg.validate()?;
    check_binary_problem(k, y)?;
    check_psd(k)?;
    let mut smo = Smo::new(k, y, cfg, true);
    let model = smo.run_inner();
    let objective = smo.trace.take().unwrap_or_default();
    Ok((model, SmoTrace { objective }))
}

struct Smo<'a> {
    k: &'a KernelMatrix,
    y: Vec<f64>,
    labels: &'a [i8],
    alpha: Vec<f64>,
    /// `g_i = Σ_j α_j y_j K_ij`
    grad: Vec<f64>,
    b: f64,
    c: f64,
    /// Working tolerance; half of the configured one so the final bias
    /// re-estimate cannot push a point outside `cfg.tol`.
    tol: f64,
    cfg: TrainConfig,
    rng: ChaCha8Rng,
    updates: usize,
    passes: usize,
    trace: Option<Vec<f64>>,
}

impl<'a> Smo<'a> {
    fn new(k: &'a KernelMatrix, labels: &'a [i8], cfg: &TrainConfig, traced: bool) -> Self {
        let m = labels.len();
        Self {
            k,
            y: labels.iter().map(|&l| f64::from(l)).collect(),
            labels,
            alpha: vec![0.0; m],
            grad: vec![0.0; m],
            b: 0.0,
            c: cfg.c,
            tol: cfg.tol / 2.0,
            cfg: *cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            updates: 0,
            passes: 0,
            trace: traced.then(Vec::new),
        }
    }

    fn error(&self, i: usize) -> f64 {
        self.grad[i] + self.b - self.y[i]
    }

    fn violates(&self, i: usize) -> bool {
        let r = self.y[i] * self.error(i);
        (r < -self.tol && self.alpha[i] < self.c) || (r > self.tol && self.alpha[i] > 0.0)
    }

    fn update_limit(&self) -> usize {
        let m = self.alpha.len();
        100_000 + 1_000 * m
    }

    fn run(mut self) -> SvmModel {
        self.run_inner()
    }

    fn run_inner(&mut self) -> SvmModel {
        let m = self.alpha.len();
        loop {
            let mut quiet = 0;
            while quiet < self.cfg.max_passes && self.updates < self.update_limit() {
                let mut changed = 0;
                for i in 0..m {
                    if self.violates(i) && self.examine(i) {
                        changed += 1;
                    }
                }
                self.passes += 1;
                quiet = if changed == 0 { quiet + 1 } else { 0 };
            }
            // Re-estimate the bias from the free vectors and resume if that
            // exposed a violator the solver can still fix.
            let b = self.final_bias();
            let old = std::mem::replace(&mut self.b, b);
            let stuck = (0..m).all(|i| !self.violates(i));
            if stuck || self.updates >= self.update_limit() || b == old {
                break;
            }
        }
        SvmModel {
            alphas: self.alpha.clone(),
            labels: self.labels.to_vec(),
            bias: self.b,
            support_indices: support_of(&self.alpha, self.c),
            c: self.c,
            kernel: *self.k.kind(),
            provenance: Provenance {
                trainer: Trainer::Smo,
                seed: self.cfg.seed,
                passes: self.passes,
                updates: self.updates,
            },
        }
    }

    /// Average of `y_i − g_i` over free vectors, then over all support
    /// vectors, then `mean(y)`.
    fn final_bias(&self) -> f64 {
        let eps = ALPHA_EPS * self.c;
        let mean_over = |pred: &dyn Fn(f64) -> bool| {
            let (sum, n) = (0..self.alpha.len())
                .filter(|&i| pred(self.alpha[i]))
                .fold((0.0, 0usize), |(s, n), i| {
                    (s + self.y[i] - self.grad[i], n + 1)
                });
            (n > 0).then(|| sum / n as f64)
        };
        mean_over(&|a| a > eps && a < self.c - eps)
            .or_else(|| mean_over(&|a| a > eps))
            .unwrap_or_else(|| self.y.iter().sum::<f64>() / self.y.len() as f64)
    }

    fn examine(&mut self, i: usize) -> bool {
        let m = self.alpha.len();
        let j = {
            let r = self.rng.random_range(0..m - 1);
            if r >= i {
                r + 1
            } else {
                r
            }
        };
        if self.take_step(i, j) {
            return true;
        }
        let ei = self.error(i);
        let best = (0..m).filter(|&j| j != i).max_by(|&a, &b| {
            let da = (ei - self.error(a)).abs();
            let db = (ei - self.error(b)).abs();
            da.total_cmp(&db).then(b.cmp(&a))
        });
        if let Some(j) = best {
            if self.take_step(i, j) {
                return true;
            }
        }
        let start = self.rng.random_range(0..m);
        (0..m)
            .map(|o| (start + o) % m)
            .any(|j| j != i && self.take_step(i, j))
    }

    fn take_step(&mut self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a1, a2) = (self.alpha[i], self.alpha[j]);
        let (y1, y2) = (self.y[i], self.y[j]);
        let (e1, e2) = (self.error(i), self.error(j));
        let c = self.c;
        let (lo, hi) = if y1 != y2 {
            ((a2 - a1).max(0.0), (c + a2 - a1).min(c))
        } else {
            ((a1 + a2 - c).max(0.0), (a1 + a2).min(c))
        };
        if hi - lo < 1e-12 {
            return false;
        }
        let (k11, k12, k22) = (self.k.get(i, i), self.k.get(i, j), self.k.get(j, j));
        let eta = k11 + k22 - 2.0 * k12;
        if eta <= 1e-12 {
            return false;
        }
        let mut a2_new = (a2 + y2 * (e1 - e2) / eta).clamp(lo, hi);
        if a2_new < ALPHA_EPS * c {
            a2_new = 0.0;
        } else if a2_new > c * (1.0 - ALPHA_EPS) {
            a2_new = c;
        }
        if (a2_new - a2).abs() < 1e-12 * (a2_new + a2 + 1e-12) {
            return false;
        }
        let mut a1_new = a1 + y1 * y2 * (a2 - a2_new);
        if a1_new < ALPHA_EPS * c {
            a1_new = 0.0;
        } else if a1_new > c * (1.0 - ALPHA_EPS) {
            a1_new = c;
        }
        let (d1, d2) = (y1 * (a1_new - a1), y2 * (a2_new - a2));

        let b1 = self.b - e1 - d1 * k11 - d2 * k12;
        let b2 = self.b - e2 - d1 * k12 - d2 * k22;
        self.b = if a1_new > 0.0 && a1_new < c {
            b1
        } else if a2_new > 0.0 && a2_new < c {
            b2
        } else {
            0.5 * (b1 + b2)
        };

        let (ri, rj) = (self.k.row(i), self.k.row(j));
        for ((g, ki), kj) in self.grad.iter_mut().zip(ri).zip(rj) {
            *g += d1 * ki + d2 * kj;
        }
        self.alpha[i] = a1_new;
        self.alpha[j] = a2_new;
        self.updates += 1;

        if let Some(trace) = self.trace.as_mut() {
            let w = self.alpha.iter().sum::<f64>()
                - 0.5
                    * self
                        .alpha
                        .iter()
                        .zip(&self.y)
                        .zip(&self.grad)
                        .map(|((a, y), g)| a * y * g)
                        .sum::<f64>();
            trace.push(w);
        }
        true
    }
}

pub fn train_sgd(k: &KernelMatrix, y: &[i8], cfg: &TrainConfig) -> Result<SvmModel> {
    let cfg = TrainConfig {
        trainer: Trainer::Sgd,
        ..*cfg
    };
    cfg.validate()?;
    check_binary_problem(k, y)?;

    let m = y.len();
    let yf: Vec<f64> = y.iter().map(|&l| f64::from(l)).collect();
    let lambda = 1.0 / (cfg.c * m as f64);
    let decay = 1.0 - cfg.learning_rate * lambda;
    let mut beta = vec![0.0; m];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..m).collect();
    let mut visits = 0;

    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let row = k.row(i);
            let f: f64 = beta
                .iter()
                .zip(&yf)
                .zip(row)
                .map(|((b, yj), kij)| b * yj * (kij + 1.0))
                .sum();
            for b in beta.iter_mut() {
                *b *= decay;
            }
            if yf[i] * f < 1.0 {
                beta[i] += cfg.learning_rate;
            }
            visits += 1;
        }
    }

    let bias = beta.iter().zip(&yf).map(|(b, y)| b * y).sum();
    Ok(SvmModel {
        support_indices: support_of(&beta, cfg.c),
        alphas: beta,
        labels: y.to_vec(),
        bias,
        c: cfg.c,
        kernel: *k.kind(),
        provenance: Provenance {
            trainer: Trainer::Sgd,
            seed: cfg.seed,
            passes: cfg.epochs,
            updates: visits,
        },
    })
}

/// Dispatches on `cfg.trainer`.
pub fn train(k: &KernelMatrix, y: &[i8], cfg: &TrainConfig) -> Result<SvmModel> {
    match cfg.trainer {
        Trainer::Smo => train_smo(k, y, cfg),
        Trainer::Sgd => train_sgd(k, y, cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KktReport {
    pub violations: usize,
    pub max_violation: f64,
}

/// Audits the KKT conditions of a trained model against its training Gram:
///
/// - `α_i = 0     ⇒ y_i f_i ≥ 1 − tol`
/// - `0 < α_i < C ⇒ |y_i f_i − 1| ≤ tol`
/// - `α_i = C     ⇒ y_i f_i ≤ 1 + tol`
pub fn kkt_report(model: &SvmModel, k: &KernelMatrix, y: &[i8], tol: f64) -> KktReport {
    let c = model.c;
    let eps = ALPHA_EPS * c;
    let mut report = KktReport {
        violations: 0,
        max_violation: 0.0,
    };
    for (i, &label) in y.iter().enumerate().take(k.size()) {
        let Ok(f) = model.decision_value(k.row(i)) else {
            continue;
        };
        let margin = f64::from(label) * f;
        let a = model.alphas[i];
        let gap = if a <= eps {
            1.0 - margin
        } else if a >= c - eps {
            margin - 1.0
        } else {
            (margin - 1.0).abs()
        };
        let gap = gap.max(0.0);
        report.max_violation = report.max_violation.max(gap);
        if gap > tol {
            report.violations += 1;
        }
    }
    report
}

/// One-vs-rest ensemble over integer class labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MulticlassModel {
    pub strategy: String,
    pub classes: Vec<usize>,
    pub models: Vec<SvmModel>,
}

pub fn train_multiclass(
    k: &KernelMatrix,
    y: &[usize],
    cfg: &TrainConfig,
) -> Result<MulticlassModel> {
    cfg.validate()?;
    if k.size() != y.len() {
        return Err(invalid(format!(
            "kernel is {}×{} but there are {} labels",
            k.size(),
            k.size(),
            y.len()
        )));
    }
    let mut classes: Vec<usize> = y.to_vec();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        return Err(invalid("multiclass training needs at least two classes"));
    }
    for &c in &classes {
        let count = y.iter().filter(|&&l| l == c).count();
        if count < 2 {
            return Err(invalid(format!(
                "class {c} has {count} sample(s); at least 2 required"
            )));
        }
    }
    if cfg.trainer == Trainer::Smo {
        check_psd(k)?;
    }
    let models = classes
        .par_iter()
        .map(|&c| {
            let yb: Vec<i8> = y.iter().map(|&l| if l == c { 1 } else { -1 }).collect();
            match cfg.trainer {
                Trainer::Smo => Ok(Smo::new(k, &yb, cfg, false).run()),
                Trainer::Sgd => train_sgd(k, &yb, cfg),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MulticlassModel {
        strategy: "one_vs_rest".into(),
        classes,
        models,
    })
}

impl MulticlassModel {
    /// Argmax of per-class decision values; ties go to the lowest class.
    pub fn predict(&self, rows: &[Vec<f64>]) -> Result<Vec<usize>> {
        let per_class = self
            .models
            .iter()
            .map(|m| m.decision_values(rows))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..rows.len())
            .map(|r| {
                let mut best = 0;
                for c in 1..self.classes.len() {
                    if per_class[c][r] > per_class[best][r] {
                        best = c;
                    }
                }
                self.classes[best]
            })
            .collect())
    }
}

pub fn predict_multiclass(model: &MulticlassModel, rows: &[Vec<f64>]) -> Result<Vec<usize>> {
    model.predict(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{classical_gram, ClassicalKernelParams, ClassicalKind};

    fn linear_gram(x: &[Vec<f64>]) -> KernelMatrix {
        classical_gram(
            x,
            &ClassicalKernelParams::with_defaults(ClassicalKind::Linear, 1),
        )
        .unwrap()
    }

    fn two_points() -> (KernelMatrix, Vec<i8>) {
        (linear_gram(&[vec![-1.0], vec![1.0]]), vec![-1, 1])
    }

    fn cfg_c(c: f64) -> TrainConfig {
        TrainConfig {
            c,
            ..TrainConfig::default()
        }
    }

    #[test]
    fn analytic_two_point_problem() {
        let (k, y) = two_points();
        let model = train_smo(&k, &y, &cfg_c(10.0)).unwrap();
        assert!((model.alphas[0] - 0.5).abs() < 1e-6, "{:?}", model.alphas);
        assert!((model.alphas[1] - 0.5).abs() < 1e-6);
        assert!(model.bias.abs() < 1e-6);
        for x in [-3.0, -0.2, 0.7, 2.5] {
            let f = model.decision_value(&[-x, x]).unwrap();
            assert!((f - x).abs() < 1e-6);
        }
        assert_eq!(
            model
                .predict(&[k.row(0).to_vec(), k.row(1).to_vec()])
                .unwrap(),
            vec![-1, 1]
        );
        let kkt = kkt_report(&model, &k, &y, 1e-3);
        assert_eq!(kkt.violations, 0);
    }

    #[test]
    fn single_class_is_rejected() {
        let (k, _) = two_points();
        assert!(train_smo(&k, &[1, 1], &TrainConfig::default()).is_err());
        assert!(train_sgd(&k, &[-1, -1], &TrainConfig::default()).is_err());
    }

    #[test]
    fn indefinite_gram_is_rejected_by_smo() {
        let kind = *two_points().0.kind();
        let k = KernelMatrix::from_rows(kind, vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(train_smo(&k, &[-1, 1], &TrainConfig::default()).is_err());
    }

    #[test]
    fn sgd_separates_two_points_deterministically() {
        let (k, y) = two_points();
        let cfg = TrainConfig {
            trainer: Trainer::Sgd,
            learning_rate: 0.1,
            epochs: 100,
            seed: 9,
            ..TrainConfig::default()
        };
        let a = train_sgd(&k, &y, &cfg).unwrap();
        let rows: Vec<Vec<f64>> = k.rows().map(<[f64]>::to_vec).collect();
        assert_eq!(a.predict(&rows).unwrap(), y);
        let b = train_sgd(&k, &y, &cfg).unwrap();
        assert_eq!(a, b);
        let bits: Vec<u64> = a.alphas.iter().map(|v| v.to_bits()).collect();
        assert_eq!(
            bits,
            b.alphas.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn sgd_rejects_non_positive_learning_rate() {
        let (k, y) = two_points();
        for lr in [0.0, -0.1] {
            let cfg = TrainConfig {
                trainer: Trainer::Sgd,
                learning_rate: lr,
                ..TrainConfig::default()
            };
            assert!(train_sgd(&k, &y, &cfg).is_err());
        }
    }

    fn zero_model(m: usize, bias: f64) -> SvmModel {
        let (k, _) = two_points();
        SvmModel {
            alphas: vec![0.0; m],
            labels: vec![1; m],
            bias,
            support_indices: vec![],
            c: 1.0,
            kernel: *k.kind(),
            provenance: Provenance {
                trainer: Trainer::Smo,
                seed: 0,
                passes: 0,
                updates: 0,
            },
        }
    }

    #[test]
    fn decision_value_edge_cases() {
        let m = zero_model(3, 0.25);
        assert_eq!(m.decision_value(&[4.0, 5.0, 6.0]).unwrap(), 0.25);
        assert!(m.decision_value(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn sign_convention() {
        assert_eq!(sign_label(-2.0), -1);
        assert_eq!(sign_label(0.3), 1);
        assert_eq!(sign_label(0.0), 1);
    }

    #[test]
    fn untrained_model_violates_everywhere() {
        let x = vec![vec![-2.0], vec![-1.0], vec![1.0], vec![2.0]];
        let k = linear_gram(&x);
        let y = vec![-1, -1, 1, 1];
        let r = kkt_report(&zero_model(4, 0.0), &k, &y, 1e-3);
        assert_eq!(r.violations, 4);
        assert!((r.max_violation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multiclass_on_three_clusters() {
        let centers = [(0.0, 5.0), (5.0, -3.0), (-5.0, -3.0)];
        let mut x = Vec::new();
        let mut y = Vec::new();
        for (c, &(cx, cy)) in centers.iter().enumerate() {
            for (dx, dy) in [(0.1, 0.0), (-0.1, 0.1), (0.0, -0.1)] {
                x.push(vec![cx + dx, cy + dy]);
                y.push(c);
            }
        }
        let k = linear_gram(&x);
        let model = train_multiclass(&k, &y, &cfg_c(10.0)).unwrap();
        assert_eq!(model.models.len(), 3);
        let rows: Vec<Vec<f64>> = k.rows().map(<[f64]>::to_vec).collect();
        assert_eq!(model.predict(&rows).unwrap(), y);
    }

    #[test]
    fn multiclass_rejects_tiny_classes() {
        let x = vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0], vec![4.0]];
        let k = linear_gram(&x);
        assert!(train_multiclass(&k, &[0, 0, 1, 1, 2], &TrainConfig::default()).is_err());
        assert!(train_multiclass(&k, &[0, 0, 0, 0, 0], &TrainConfig::default()).is_err());
    }

    #[test]
    fn model_json_round_trip() {
        let (k, y) = two_points();
        let model = train_smo(&k, &y, &cfg_c(10.0)).unwrap();
        let json = serde_json::to_string(&model).unwrap();
        assert!(json.contains("\"C\":10.0"));
        let back: SvmModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
    }
}
