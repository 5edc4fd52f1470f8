use std::fmt;

use crate::error::{invalid, Result};

use super::gate::Gate;

/// Ordered gate list over a fixed register width.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > super::MAX_QUBITS {
            return Err(invalid(format!(
                "circuit width must be in 1..={}, got {n_qubits}",
                super::MAX_QUBITS
            )));
        }
        Ok(Self {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut circuit = Self::new(n_qubits)?;
        for g in gates {
            circuit.push(g)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends every gate of `other`, which must have the same width.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return Err(invalid(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Text diagram, one wire per qubit, one column per gate.
///
/// ```text
/// q0: ─H─────────P(0.200)──●───────────────●──
/// q1: ─H─────────P(0.400)──X──P(8.040)─────X──
/// ```
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<String> = (0..self.n_qubits).map(|q| format!("q{q}: ─")).collect();
        let prefix = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        for r in rows.iter_mut() {
            while r.chars().count() < prefix {
                r.insert(2, ' ');
            }
        }

        for gate in &self.gates {
            let qubits = gate.qubits();
            let mut cells: Vec<String> = vec![String::new(); self.n_qubits];
            match qubits.as_slice() {
                [q] => cells[*q] = gate.label(),
                [c, t] => {
                    cells[*c] = "●".to_string();
                    cells[*t] = match gate {
                        Gate::Cz { .. } => "●".to_string(),
                        _ => "X".to_string(),
                    };
                    let (lo, hi) = if c < t { (*c, *t) } else { (*t, *c) };
                    for cell in cells.iter_mut().take(hi).skip(lo + 1) {
                        *cell = "│".to_string();
                    }
                }
                _ => unreachable!(),
            }
            let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
            for (row, cell) in rows.iter_mut().zip(&cells) {
                let pad = width - cell.chars().count();
                if cell.is_empty() {
                    row.push_str(&"─".repeat(width));
                } else {
                    row.push_str(cell);
                    row.push_str(&"─".repeat(pad));
                }
                row.push_str("──");
            }
        }

        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", row.trim_end())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates_against_width() {
        let mut c = Circuit::new(2).unwrap();
        assert!(c.push(Gate::H(1)).is_ok());
        assert!(c.push(Gate::H(2)).is_err());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn zero_width_is_rejected() {
        assert!(Circuit::new(0).is_err());
        assert!(Circuit::new(17).is_err());
    }

    #[test]
    fn diagram_has_one_line_per_qubit() {
        let c = Circuit::from_gates(
            3,
            [
                Gate::H(0),
                Gate::Cnot {
                    control: 0,
                    target: 2,
                },
                Gate::P(1, 0.5),
            ],
        )
        .unwrap();
        let text = c.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].contains('H') && lines[0].contains('●'));
        assert!(lines[1].contains('│') && lines[1].contains("P(0.500)"));
        assert!(lines[2].contains('X'));
    }
}
