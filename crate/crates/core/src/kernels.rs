//! Kernel functions, Gram-matrix assembly and spectral checks.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::featuremap::{encode, FeatureMapConfig};
use crate::statevec::Statevector;

/// Relative PSD slack: a Gram of size `m` passes when `λ_min ≥ -PSD_TOL·m`.
pub const PSD_TOL: f64 = 1e-9;
/// Largest asymmetry `psd_report` accepts.
pub const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalKind {
    Linear,
    Poly,
    Rbf,
    Sigmoid,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 4] = [
        ClassicalKind::Linear,
        ClassicalKind::Poly,
        ClassicalKind::Rbf,
        ClassicalKind::Sigmoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::Linear => "linear",
            ClassicalKind::Poly => "poly",
            ClassicalKind::Rbf => "rbf",
            ClassicalKind::Sigmoid => "sigmoid",
        }
    }
}

impl std::str::FromStr for ClassicalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassicalKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown classical kernel '{s}'")))
    }
}

/// Parameters of a classical kernel. `gamma` defaults to `1/d` through
/// [`ClassicalKernelParams::with_defaults`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalKernelParams {
    pub kind: ClassicalKind,
    pub gamma: f64,
    pub degree: u32,
    pub coef0: f64,
}

impl ClassicalKernelParams {
    pub const DEFAULT_DEGREE: u32 = 3;
    pub const DEFAULT_COEF0: f64 = 0.0;

    pub fn with_defaults(kind: ClassicalKind, n_features: usize) -> Self {
        Self {
            kind,
            gamma: 1.0 / n_features.max(1) as f64,
            degree: Self::DEFAULT_DEGREE,
            coef0: Self::DEFAULT_COEF0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(invalid(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if self.degree == 0 {
            return Err(invalid("polynomial degree must be at least 1"));
        }
        if !self.coef0.is_finite() {
            return Err(invalid("coef0 must be finite"));
        }
        Ok(())
    }
}

impl fmt::Display for ClassicalKernelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClassicalKind::Linear => write!(f, "linear"),
            ClassicalKind::Rbf => write!(f, "rbf(gamma={})", self.gamma),
            ClassicalKind::Poly => write!(
                f,
                "poly(gamma={}, degree={}, coef0={})",
                self.gamma, self.degree, self.coef0
            ),
            ClassicalKind::Sigmoid => {
                write!(f, "sigmoid(gamma={}, coef0={})", self.gamma, self.coef0)
            }
        }
    }
}

/// Which kernel produced a Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Quantum(FeatureMapConfig),
    Classical(ClassicalKernelParams),
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::Quantum(c) => write!(f, "quantum {c}"),
            KernelKind::Classical(p) => write!(f, "classical {p}"),
        }
    }
}

impl KernelKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelKind::Quantum(c) => c.validate(),
            KernelKind::Classical(p) => p.validate(),
        }
    }

    pub fn gram(&self, x: &[Vec<f64>]) -> Result<KernelMatrix> {
        match self {
            KernelKind::Quantum(c) => quantum_gram(x, c),
            KernelKind::Classical(p) => classical_gram(x, p),
        }
    }

    /// Kernel rows of `rows` against the training points `train`.
    pub fn cross(&self, rows: &[Vec<f64>], train: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        match self {
            KernelKind::Quantum(c) => quantum_cross(rows, train, c),
            KernelKind::Classical(p) => classical_cross(rows, train, p),
        }
    }
}

/// Square kernel matrix stored row-major.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    size: usize,
    values: Vec<f64>,
    kind: KernelKind,
    psd: OnceLock<PsdReport>,
}

impl PartialEq for KernelMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.kind == other.kind && self.values == other.values
    }
}

impl KernelMatrix {
    pub fn from_rows(kind: KernelKind, rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(invalid("kernel matrix must have at least one row"));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != size) {
            return Err(invalid(format!(
                "kernel matrix row {i} has {} entries, expected {size}",
                rows[i].len()
            )));
        }
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("kernel matrix contains non-finite values"));
        }
        Ok(Self {
            size,
            values,
            kind,
            psd: OnceLock::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> &KernelKind {
        &self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.size)
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.size {
            for j in i + 1..self.size {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Principal submatrix on `idx` (rows and columns in that order).
    pub fn select(&self, idx: &[usize]) -> Result<KernelMatrix> {
        self.check_indices(idx)?;
        let rows = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        KernelMatrix::from_rows(self.kind, rows)
    }

    /// Rectangular block `K[rows, cols]`.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Result<Vec<Vec<f64>>> {
        self.check_indices(rows)?;
        self.check_indices(cols)?;
        Ok(rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j)).collect())
            .collect())
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        match idx.iter().find(|&&i| i >= self.size) {
            Some(i) => Err(invalid(format!(
                "index {i} out of range for a {}×{} kernel matrix",
                self.size, self.size
            ))),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&KernelFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: KernelFile = serde_json::from_str(text)?;
        if file.size != file.values.len() {
            return Err(invalid(format!(
                "kernel file declares size {} but has {} rows",
                file.size,
                file.values.len()
            )));
        }
        KernelMatrix::from_rows(file.kind, file.values)
    }

    /// CSV export: first record is `kind,<descriptor JSON>`, then one record
    /// per row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record(["kind", &serde_json::to_string(&self.kind)?])?;
        for row in self.rows() {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(input);
        let mut records = r.records();
        let header = records.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty kernel CSV".into(),
        })??;
        if header.get(0) != Some("kind") || header.len() != 2 {
            return Err(Error::Parse {
                line: 1,
                message: "expected header record `kind,<descriptor>`".into(),
            });
        }
        let kind: KernelKind = serde_json::from_str(&header[1])?;
        let mut rows = Vec::new();
        for (i, rec) in records.enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|cell| {
                    cell.trim().parse::<f64>().map_err(|e| Error::Parse {
                        line: i + 2,
                        message: format!("bad value '{cell}': {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        KernelMatrix::from_rows(kind, rows)
    }

    /// Loads a kernel file, choosing JSON or CSV by extension.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::read_csv(text.as_bytes())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct KernelFile {
    kind: KernelKind,
    size: usize,
    values: Vec<Vec<f64>>,
}

impl From<&KernelMatrix> for KernelFile {
    fn from(k: &KernelMatrix) -> Self {
        KernelFile {
            kind: k.kind,
            size: k.size,
            values: k.rows().map(<[f64]>::to_vec).collect(),
        }
    }
}

pub fn quantum_kernel(xi: &[f64], xj: &[f64], config: &FeatureMapConfig) -> Result<f64> {
    encode(xi, config)?.fidelity(&encode(xj, config)?)
}

fn encode_all(x: &[Vec<f64>], config: &FeatureMapConfig) -> Result<Vec<Statevector>> {
    x.par_iter().map(|row| encode(row, config)).collect()
}

/// Fidelity Gram matrix. Each row is encoded once; cells of the upper
/// triangle are filled independently so the result does not depend on the
/// worker count.
pub fn quantum_gram(x: &[Vec<f64>], config: &FeatureMapConfig) -> Result<KernelMatrix> {
    if x.is_empty() {
        return Err(invalid("cannot build a Gram matrix of an empty dataset"));
    }
    let states = encode_all(x, config)?;
    let m = states.len();
    let upper: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (i + 1..m)
                .map(|j| states[i].fidelity(&states[j]))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows = vec![vec![0.0; m]; m];
    for i in 0..m {
        rows[i][i] = 1.0;
        for (off, &v) in upper[i].iter().enumerate() {
            let j = i + 1 + off;
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    KernelMatrix::from_rows(KernelKind::Quantum(*config), rows)
}

pub fn quantum_cross(
    rows: &[Vec<f64>],
    train: &[Vec<f64>],
    config: &FeatureMapConfig,
) -> Result<Vec<Vec<f64>>> {
    let train_states = encode_all(train, config)?;
    let row_states = encode_all(rows, config)?;
    row_states
        .par_iter()
        .map(|s| train_states.iter().map(|t| s.fidelity(t)).collect())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn classical_kernel(xi: &[f64], xj: &[f64], params: &ClassicalKernelParams) -> Result<f64> {
    if xi.len() != xj.len() {
        return Err(invalid(format!(
            "kernel arguments have lengths {} and {}",
            xi.len(),
            xj.len()
        )));
    }
    params.validate()?;
    let ClassicalKernelParams {
        kind,
        gamma,
        degree,
        coef0,
    } = *params;
    Ok(match kind {
        ClassicalKind::Linear => dot(xi, xj),
        ClassicalKind::Poly => (gamma * dot(xi, xj) + coef0).powi(degree as i32),
        ClassicalKind::Rbf => {
            let d2: f64 = xi.iter().zip(xj).map(|(a, b)| (a - b) * (a - b)).sum();
            (-gamma * d2).exp()
        }
        ClassicalKind::Sigmoid => (gamma * dot(xi, xj) + coef0).tanh(),
    })
}

pub fn classical_gram(x: &[Vec<f64>], params: &ClassicalKernelParams) -> Result<KernelMatrix> {
    if x.is_empty() {
        return Err(invalid("cannot build a Gram matrix of an empty dataset"));
    }
    let m = x.len();
    let mut rows = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let v = classical_kernel(&x[i], &x[j], params)?;
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    KernelMatrix::from_rows(KernelKind::Classical(*params), rows)
}

pub fn classical_cross(
    rows: &[Vec<f64>],
    train: &[Vec<f64>],
    params: &ClassicalKernelParams,
) -> Result<Vec<Vec<f64>>> {
    rows.iter()
        .map(|r| {
            train
                .iter()
                .map(|t| classical_kernel(r, t, params))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    pub is_psd: bool,
}

/// Smallest eigenvalue of a symmetric kernel matrix and the PSD verdict
/// `λ_min ≥ -1e-9·m`. The result is cached on the matrix.
pub fn psd_report(k: &KernelMatrix) -> Result<PsdReport> {
    if let Some(r) = k.psd.get() {
        return Ok(*r);
    }
    let asym = k.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(invalid(format!(
            "kernel matrix is not symmetric (max |K_ij - K_ji| = {asym:e})"
        )));
    }
    Ok(*k.psd.get_or_init(|| spectrum_floor(k)))
}

fn spectrum_floor(k: &KernelMatrix) -> PsdReport {
    let m = k.size();
    let dense = DMatrix::from_row_slice(m, m, &k.values);
    let min_eigenvalue = dense
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    PsdReport {
        min_eigenvalue,
        is_psd: min_eigenvalue >= -PSD_TOL * m as f64,
    }
}
