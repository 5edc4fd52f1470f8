//! Dense statevector simulator.
//!
//! Basis index `k` encodes qubit 0 as its least-significant bit, so the
//! amplitude of `|q_{n-1} … q_1 q_0⟩` lives at `k = Σ q_i·2^i`. Gates are
//! applied in place by striding over amplitude pairs (or quadruples for
//! two-qubit gates); no full `2ⁿ×2ⁿ` matrix is ever built.

mod circuit;
mod gate;

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{invalid, Result};

pub use circuit::Circuit;
pub use gate::{Gate, GateKind, GateMatrix};

/// Hard cap on register width (2^16 amplitudes, 1 MiB per state).
pub const MAX_QUBITS: usize = 16;

/// Fidelity overshoot beyond [0, 1] that is silently clamped.
const FIDELITY_CLAMP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(invalid(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n_qubits}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two; no
    /// normalization is applied or checked.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() || len > 1 << MAX_QUBITS {
            return Err(invalid(format!(
                "amplitude count must be a power of two in 2..=2^{MAX_QUBITS}, got {len}"
            )));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::Cnot { control, target } => {
                let (cbit, tbit) = (1usize << control, 1usize << target);
                for k in 0..self.amps.len() {
                    if k & cbit != 0 && k & tbit == 0 {
                        self.amps.swap(k, k | tbit);
                    }
                }
            }
            Gate::Cz { control, target } => {
                let mask = (1usize << control) | (1usize << target);
                for (k, a) in self.amps.iter_mut().enumerate() {
                    if k & mask == mask {
                        *a = -*a;
                    }
                }
            }
            Gate::P(q, theta) => {
                let phase = Complex64::from_polar(1.0, theta);
                let bit = 1usize << q;
                for (k, a) in self.amps.iter_mut().enumerate() {
                    if k & bit != 0 {
                        *a *= phase;
                    }
                }
            }
            _ => {
                let GateMatrix::Single(m) = gate.matrix() else {
                    unreachable!("two-qubit kinds handled above")
                };
                let q = gate.qubits()[0];
                self.apply_single(q, &m);
            }
        }
        Ok(())
    }

    fn apply_single(&mut self, qubit: usize, m: &[[Complex64; 2]; 2]) {
        let stride = 1usize << qubit;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = m[0][0] * x + m[0][1] * y;
                *a1 = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.n_qubits() != self.n_qubits {
            return Err(invalid(format!(
                "circuit is {}-qubit but state is {}-qubit",
                circuit.n_qubits(),
                self.n_qubits
            )));
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    /// `⟨self|other⟩ = Σ_k conj(self_k)·other_k`.
    pub fn inner_product(&self, other: &Statevector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(invalid(format!(
                "inner product of {}-qubit and {}-qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`, clamped into [0, 1] when roundoff overshoots slightly.
    pub fn fidelity(&self, other: &Statevector) -> Result<f64> {
        let f = self.inner_product(other)?.norm_sqr();
        if f > 1.0 && f <= 1.0 + FIDELITY_CLAMP_SLACK {
            Ok(1.0)
        } else {
            Ok(f.max(0.0))
        }
    }

    /// Debug dump as a JSON array of `[re, im]` pairs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite floats always serialize")
    }
}

impl Serialize for Statevector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.amps.len()))?;
        for a in &self.amps {
            seq.serialize_element(&[a.re, a.im])?;
        }
        seq.end()
    }
}

/// Applies `circuit` to `|0…0⟩`.
pub fn run_from_zero(circuit: &Circuit) -> Result<Statevector> {
    let mut state = Statevector::zero(circuit.n_qubits())?;
    state.apply_circuit(circuit)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_amps(state: &Statevector, expected: &[Complex64]) {
        assert_eq!(state.amplitudes().len(), expected.len());
        for (k, (a, e)) in state.amplitudes().iter().zip(expected).enumerate() {
            assert!((a - e).norm() <= 1e-12, "amp {k}: {a} vs {e}");
        }
    }

    fn plus() -> Statevector {
        let mut s = Statevector::zero(1).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        s
    }

    fn one() -> Statevector {
        Statevector::from_amplitudes(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn zero_state_shapes() {
        assert_amps(&Statevector::zero(1).unwrap(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_amps(
            &Statevector::zero(2).unwrap(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!(Statevector::zero(0).is_err());
        assert!(Statevector::zero(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn hadamard_makes_plus() {
        let h = c(FRAC_1_SQRT_2, 0.0);
        assert_amps(&plus(), &[h, h]);
    }

    #[test]
    fn cnot_with_control_in_plus_makes_bell() {
        let mut s = Statevector::zero(2).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        s.apply_gate(&Gate::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        let h = c(FRAC_1_SQRT_2, 0.0);
        let z = c(0.0, 0.0);
        assert_amps(&s, &[h, z, z, h]);
    }

    #[test]
    fn phase_leaves_zero_alone() {
        for theta in [0.0, 0.3, -2.0, 7.5] {
            let mut s = Statevector::zero(1).unwrap();
            s.apply_gate(&Gate::P(0, theta)).unwrap();
            assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0)]);
        }
    }

    #[test]
    fn out_of_range_gate_is_rejected() {
        let mut s = Statevector::zero(2).unwrap();
        assert!(s.apply_gate(&Gate::H(2)).is_err());
        assert!(s
            .apply_gate(&Gate::Cz {
                control: 0,
                target: 5
            })
            .is_err());
    }

    #[test]
    fn circuit_application_rules() {
        let mut s = Statevector::zero(1).unwrap();
        s.apply_circuit(&Circuit::new(1).unwrap()).unwrap();
        assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0)]);

        let hh = Circuit::from_gates(1, [Gate::H(0), Gate::H(0)]).unwrap();
        s.apply_circuit(&hh).unwrap();
        assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0)]);

        let wide = Circuit::new(2).unwrap();
        assert!(s.apply_circuit(&wide).is_err());
    }

    #[test]
    fn inner_products() {
        let zero = Statevector::zero(1).unwrap();
        assert!((zero.inner_product(&zero).unwrap() - 1.0).norm() < 1e-15);
        assert!(zero.inner_product(&one()).unwrap().norm() < 1e-15);
        assert!((zero.inner_product(&plus()).unwrap() - FRAC_1_SQRT_2).norm() < 1e-15);
        assert!(zero.inner_product(&Statevector::zero(2).unwrap()).is_err());
    }

    #[test]
    fn fidelities() {
        let zero = Statevector::zero(1).unwrap();
        assert_eq!(plus().fidelity(&plus()).unwrap(), 1.0);
        assert_eq!(zero.fidelity(&one()).unwrap(), 0.0);
        assert!((zero.fidelity(&plus()).unwrap() - 0.5).abs() < 1e-15);
        assert!(zero.fidelity(&Statevector::zero(3).unwrap()).is_err());
    }

    #[test]
    fn json_dump_is_re_im_pairs() {
        let json = plus().to_json();
        let parsed: Vec<[f64; 2]> = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.len(), 2);
        assert!((parsed[1][0] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(parsed[1][1], 0.0);
    }
}
