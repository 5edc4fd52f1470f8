use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Gate kinds understood by the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    Rx,
    Ry,
    Rz,
    P,
    Cnot,
    Cz,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::P => "P",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
        }
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::Cz)
    }
}

/// A single gate instance. For two-qubit gates the first index is the control.
///
/// Rotation conventions:
/// - `RX(θ) = exp(-iθX/2)`, `RY(θ) = exp(-iθY/2)`
/// - `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`
/// - `P(θ)  = diag(1, e^{iθ})`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    P(usize, f64),
    Cnot { control: usize, target: usize },
    Cz { control: usize, target: usize },
}

/// Dense matrix of a gate on its own qubits.
///
/// For two-qubit gates the local basis index is `2·b_control + b_target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateMatrix {
    Single([[Complex64; 2]; 2]),
    Two([[Complex64; 4]; 4]),
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::P(..) => GateKind::P,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Cz { .. } => GateKind::Cz,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(_, t) | Gate::Ry(_, t) | Gate::Rz(_, t) | Gate::P(_, t) => Some(t),
            _ => None,
        }
    }

    /// Qubits the gate acts on, control first for two-qubit kinds.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::P(q, _) => {
                vec![q]
            }
            Gate::Cnot { control, target } | Gate::Cz { control, target } => {
                vec![control, target]
            }
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(invalid(format!(
                "{} acts on qubit {q} but the register has {n_qubits} qubits",
                self.kind().name()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(invalid(format!(
                "{} control and target must differ (both {})",
                self.kind().name(),
                qubits[0]
            )));
        }
        if let Some(theta) = self.angle() {
            if !theta.is_finite() {
                return Err(invalid(format!(
                    "{} angle must be finite, got {theta}",
                    self.kind().name()
                )));
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> GateMatrix {
        match *self {
            Gate::H(_) => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                GateMatrix::Single([[h, h], [h, -h]])
            }
            Gate::Rx(_, t) => {
                let (s, c) = (t / 2.0).sin_cos();
                let c = Complex64::new(c, 0.0);
                let is = Complex64::new(0.0, -s);
                GateMatrix::Single([[c, is], [is, c]])
            }
            Gate::Ry(_, t) => {
                let (s, c) = (t / 2.0).sin_cos();
                GateMatrix::Single([
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ])
            }
            Gate::Rz(_, t) => GateMatrix::Single([
                [Complex64::from_polar(1.0, -t / 2.0), ZERO],
                [ZERO, Complex64::from_polar(1.0, t / 2.0)],
            ]),
            Gate::P(_, t) => {
                GateMatrix::Single([[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, t)]])
            }
            Gate::Cnot { .. } => GateMatrix::Two([
                [ONE, ZERO, ZERO, ZERO],
                [ZERO, ONE, ZERO, ZERO],
                [ZERO, ZERO, ZERO, ONE],
                [ZERO, ZERO, ONE, ZERO],
            ]),
            Gate::Cz { .. } => GateMatrix::Two([
                [ONE, ZERO, ZERO, ZERO],
                [ZERO, ONE, ZERO, ZERO],
                [ZERO, ZERO, ONE, ZERO],
                [ZERO, ZERO, ZERO, -ONE],
            ]),
        }
    }

    /// Short label used by the circuit diagram.
    pub(crate) fn label(&self) -> String {
        match self.angle() {
            Some(t) => format!("{}({t:.3})", self.kind().name()),
            None => self.kind().name().to_string(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qubits = self.qubits();
        match qubits.as_slice() {
            [q] => write!(f, "{} q{q}", self.label()),
            [c, t] => write!(f, "{} q{c}->q{t}", self.label()),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_unitarity_error(m: &GateMatrix) -> f64 {
        fn check<const N: usize>(u: &[[Complex64; N]; N]) -> f64 {
            let mut worst: f64 = 0.0;
            for i in 0..N {
                for j in 0..N {
                    let acc: Complex64 = u.iter().map(|row| row[i].conj() * row[j]).sum();
                    let expected = if i == j { ONE } else { ZERO };
                    worst = worst.max((acc - expected).norm());
                }
            }
            worst
        }
        match m {
            GateMatrix::Single(u) => check(u),
            GateMatrix::Two(u) => check(u),
        }
    }

    #[test]
    fn every_kind_is_unitary_for_random_angles() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let t = rng.random_range(-10.0..10.0);
            let gates = [
                Gate::H(0),
                Gate::Rx(0, t),
                Gate::Ry(0, t),
                Gate::Rz(0, t),
                Gate::P(0, t),
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
                Gate::Cz {
                    control: 0,
                    target: 1,
                },
            ];
            for g in gates {
                assert!(max_unitarity_error(&g.matrix()) <= 1e-12, "{g} not unitary");
            }
        }
    }

    #[test]
    fn validation_rejects_bad_indices() {
        assert!(Gate::H(2).validate(2).is_err());
        assert!(Gate::Cnot {
            control: 1,
            target: 1
        }
        .validate(2)
        .is_err());
        assert!(Gate::Cz {
            control: 0,
            target: 3
        }
        .validate(3)
        .is_err());
        assert!(Gate::P(0, f64::NAN).validate(1).is_err());
        assert!(Gate::Cnot {
            control: 1,
            target: 0
        }
        .validate(2)
        .is_ok());
    }
}
