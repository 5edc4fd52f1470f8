//! Data-encoding circuits for the fidelity kernel.
//!
//! One repetition of the map is
//!
//! ```text
//! H on every qubit
//! P(2·x_i) on qubit i
//! for each entangled pair (i, j):  CNOT(i→j) · P(2·(π−x_i)(π−x_j)) on j · CNOT(i→j)
//! ```
//!
//! and the full circuit is `reps` copies of that block. With
//! `Entanglement::None` the pair layer is dropped and the encoded state is a
//! product state.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::statevec::{run_from_zero, Circuit, Gate, Statevector, MAX_QUBITS};

pub const MAX_REPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entanglement {
    None,
    Linear,
    Full,
}

impl Entanglement {
    /// Ordered `(control, target)` pairs for an `n`-qubit register.
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Entanglement::None => Vec::new(),
            Entanglement::Linear => (1..n).map(|j| (j - 1, j)).collect(),
            Entanglement::Full => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
        }
    }
}

impl fmt::Display for Entanglement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entanglement::None => "none",
            Entanglement::Linear => "linear",
            Entanglement::Full => "full",
        })
    }
}

impl std::str::FromStr for Entanglement {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Entanglement::None),
            "linear" => Ok(Entanglement::Linear),
            "full" => Ok(Entanglement::Full),
            other => Err(invalid(format!(
                "unknown entanglement '{other}' (expected none, linear or full)"
            ))),
        }
    }
}

/// Two-feature phase function used in the entangling layer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairPhase {
    /// `φ_ij(x) = (π − x_i)(π − x_j)`
    #[default]
    ZzStandard,
}

impl PairPhase {
    pub fn eval(self, xi: f64, xj: f64) -> f64 {
        match self {
            PairPhase::ZzStandard => (PI - xi) * (PI - xj),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureMapConfig {
    pub n_qubits: usize,
    pub reps: usize,
    pub entanglement: Entanglement,
    #[serde(default)]
    pub pair_phase: PairPhase,
}

impl FeatureMapConfig {
    pub fn new(n_qubits: usize, reps: usize, entanglement: Entanglement) -> Result<Self> {
        let cfg = Self {
            n_qubits,
            reps,
            entanglement,
            pair_phase: PairPhase::ZzStandard,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(invalid(format!(
                "feature map n_qubits must be in 1..={MAX_QUBITS}, got {}",
                self.n_qubits
            )));
        }
        if self.reps == 0 || self.reps > MAX_REPS {
            return Err(invalid(format!(
                "feature map reps must be in 1..={MAX_REPS}, got {}",
                self.reps
            )));
        }
        Ok(())
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        self.validate()?;
        if x.len() != self.n_qubits {
            return Err(invalid(format!(
                "feature vector has {} components but the map encodes {} qubits",
                x.len(),
                self.n_qubits
            )));
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("feature {i} is not finite ({})", x[i])));
        }
        Ok(())
    }
}

impl fmt::Display for FeatureMapConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "zz(n_qubits={}, reps={}, entanglement={})",
            self.n_qubits, self.reps, self.entanglement
        )
    }
}

fn push_block(circuit: &mut Circuit, x: &[f64], config: &FeatureMapConfig) -> Result<()> {
    for q in 0..config.n_qubits {
        circuit.push(Gate::H(q))?;
    }
    for (q, &xq) in x.iter().enumerate() {
        circuit.push(Gate::P(q, 2.0 * xq))?;
    }
    for (i, j) in config.entanglement.pairs(config.n_qubits) {
        let angle = 2.0 * config.pair_phase.eval(x[i], x[j]);
        circuit.push(Gate::Cnot {
            control: i,
            target: j,
        })?;
        circuit.push(Gate::P(j, angle))?;
        circuit.push(Gate::Cnot {
            control: i,
            target: j,
        })?;
    }
    Ok(())
}

pub fn build_feature_circuit(x: &[f64], config: &FeatureMapConfig) -> Result<Circuit> {
    config.check_input(x)?;
    let mut circuit = Circuit::new(config.n_qubits)?;
    for _ in 0..config.reps {
        push_block(&mut circuit, x, config)?;
    }
    Ok(circuit)
}

/// Encoded state `U(x)|0…0⟩`.
pub fn encode(x: &[f64], config: &FeatureMapConfig) -> Result<Statevector> {
    run_from_zero(&build_feature_circuit(x, config)?)
}

/// `[H(0), CNOT(0→1)]`, which takes `|00⟩` to `(|00⟩ + |11⟩)/√2`.
pub fn bell_circuit() -> Circuit {
    Circuit::from_gates(
        2,
        [
            Gate::H(0),
            Gate::Cnot {
                control: 0,
                target: 1,
            },
        ],
    )
    .expect("static two-qubit circuit is valid")
}

/// Amplitudes of the Bell state produced by [`bell_circuit`].
pub fn bell_amplitudes() -> [f64; 4] {
    [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]
}
