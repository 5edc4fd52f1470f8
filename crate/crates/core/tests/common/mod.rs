//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the simulator's gate matrices or kernels.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use qksvm_core::statevec::{Circuit, Gate};

pub type Mat = DMatrix<C>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn m2(a: [[C; 2]; 2]) -> Mat {
    Mat::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

pub fn identity() -> Mat {
    Mat::identity(2, 2)
}

pub fn hadamard() -> Mat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    m2([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]])
}

pub fn pauli_x() -> Mat {
    m2([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn pauli_y() -> Mat {
    m2([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn pauli_z() -> Mat {
    m2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
}

/// exp(-iθP/2) = cos(θ/2)·I − i·sin(θ/2)·P for a Pauli P.
fn pauli_rotation(p: Mat, theta: f64) -> Mat {
    identity() * c((theta / 2.0).cos(), 0.0) - p * c(0.0, (theta / 2.0).sin())
}

pub fn phase(theta: f64) -> Mat {
    m2([
        [c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), C::from_polar(1.0, theta)],
    ])
}

fn proj(bit: usize) -> Mat {
    let mut m = Mat::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

/// Kronecker product of per-qubit factors; `factors[q]` acts on qubit `q`,
/// qubit 0 being the least-significant bit of the basis index.
pub fn kron_qubits(factors: &[Mat]) -> Mat {
    let mut out = Mat::from_element(1, 1, c(1.0, 0.0));
    for f in factors.iter().rev() {
        out = out.kronecker(f);
    }
    out
}

fn on_qubit(n: usize, q: usize, u: Mat) -> Mat {
    let mut f = vec![identity(); n];
    f[q] = u;
    kron_qubits(&f)
}

fn controlled(n: usize, control: usize, target: usize, u: Mat) -> Mat {
    let mut idle = vec![identity(); n];
    idle[control] = proj(0);
    let mut active = vec![identity(); n];
    active[control] = proj(1);
    active[target] = u;
    kron_qubits(&idle) + kron_qubits(&active)
}

/// Full 2^n × 2^n operator of one gate.
pub fn gate_operator(gate: &Gate, n: usize) -> Mat {
    match *gate {
        Gate::H(q) => on_qubit(n, q, hadamard()),
        Gate::Rx(q, t) => on_qubit(n, q, pauli_rotation(pauli_x(), t)),
        Gate::Ry(q, t) => on_qubit(n, q, pauli_rotation(pauli_y(), t)),
        Gate::Rz(q, t) => on_qubit(n, q, pauli_rotation(pauli_z(), t)),
        Gate::P(q, t) => on_qubit(n, q, phase(t)),
        Gate::Cnot { control, target } => controlled(n, control, target, pauli_x()),
        Gate::Cz { control, target } => controlled(n, control, target, pauli_z()),
    }
}

pub fn circuit_unitary(circuit: &Circuit) -> Mat {
    let n = circuit.n_qubits();
    let dim = 1 << n;
    circuit
        .gates()
        .iter()
        .fold(Mat::identity(dim, dim), |u, g| gate_operator(g, n) * u)
}

pub fn oracle_state(circuit: &Circuit) -> Vec<C> {
    let u = circuit_unitary(circuit);
    u.column(0).iter().copied().collect()
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// ZZ feature-map state built directly as H-layer followed by a diagonal
/// phase per repetition: basis state b picks up
/// exp(i·(Σ 2x_q b_q + Σ_pairs 2(π−x_i)(π−x_j)·(b_i ⊕ b_j))).
pub fn oracle_feature_state(x: &[f64], reps: usize, pairs: &[(usize, usize)]) -> Vec<C> {
    let n = x.len();
    let dim = 1usize << n;
    let h_all = kron_qubits(&vec![hadamard(); n]);
    let mut psi = vec![c(0.0, 0.0); dim];
    psi[0] = c(1.0, 0.0);
    let pi = std::f64::consts::PI;
    for _ in 0..reps {
        let v = nalgebra::DVector::from_vec(psi);
        let v = &h_all * v;
        psi = v.iter().copied().collect();
        for (b, amp) in psi.iter_mut().enumerate() {
            let bit = |q: usize| ((b >> q) & 1) as f64;
            let mut angle: f64 = (0..n).map(|q| 2.0 * x[q] * bit(q)).sum();
            for &(i, j) in pairs {
                let parity = ((b >> i) ^ (b >> j)) & 1;
                angle += 2.0 * (pi - x[i]) * (pi - x[j]) * parity as f64;
            }
            *amp *= C::from_polar(1.0, angle);
        }
    }
    psi
}

pub fn fidelity(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<C>()
        .norm_sqr()
}

pub fn linear_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

pub fn full_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}

pub fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    let angle = -10.0f64..10.0;
    let q = 0..n;
    let single = prop_oneof![
        q.clone().prop_map(Gate::H),
        (q.clone(), angle.clone()).prop_map(|(q, t)| Gate::Rx(q, t)),
        (q.clone(), angle.clone()).prop_map(|(q, t)| Gate::Ry(q, t)),
        (q.clone(), angle.clone()).prop_map(|(q, t)| Gate::Rz(q, t)),
        (q.clone(), angle).prop_map(|(q, t)| Gate::P(q, t)),
    ];
    if n < 2 {
        return single.boxed();
    }
    let pair = (0..n, 1..n).prop_map(move |(a, off)| (a, (a + off) % n));
    prop_oneof![
        3 => single,
        1 => pair.clone().prop_map(|(control, target)| Gate::Cnot { control, target }),
        1 => pair.prop_map(|(control, target)| Gate::Cz { control, target }),
    ]
    .boxed()
}

pub fn arb_circuit(max_qubits: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits).prop_flat_map(move |n| {
        proptest::collection::vec(arb_gate(n), 0..=max_gates)
            .prop_map(move |gates| Circuit::from_gates(n, gates).expect("valid gates"))
    })
}

/// Confusion matrix by scanning every (true, predicted) cell pair.
pub fn brute_confusion(y_true: &[usize], y_pred: &[usize], n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|t| {
            (0..n)
                .map(|p| {
                    y_true
                        .iter()
                        .zip(y_pred)
                        .filter(|&(&a, &b)| a == t && b == p)
                        .count()
                })
                .collect()
        })
        .collect()
}

/// Per-class precision/recall/F1 recomputed from labels alone.
pub fn brute_scores(y_true: &[usize], y_pred: &[usize], class: usize) -> (f64, f64, f64) {
    let tp = y_true
        .iter()
        .zip(y_pred)
        .filter(|&(&t, &p)| t == class && p == class)
        .count();
    let predicted = y_pred.iter().filter(|&&p| p == class).count();
    let actual = y_true.iter().filter(|&&t| t == class).count();
    let p = if predicted == 0 {
        0.0
    } else {
        tp as f64 / predicted as f64
    };
    let r = if actual == 0 {
        0.0
    } else {
        tp as f64 / actual as f64
    };
    let f = if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    };
    (p, r, f)
}

/// Seeded binary problems: blobs and xor with linear, rbf and quantum
/// kernels, all with m ≤ 60. Returns (name, Gram, ±1 labels).
pub fn binary_problems() -> Vec<(String, qksvm_core::kernels::KernelMatrix, Vec<i8>)> {
    use qksvm_core::data::{gen_blobs, gen_hard, HardKind};
    use qksvm_core::featuremap::{Entanglement, FeatureMapConfig};
    use qksvm_core::kernels::{ClassicalKernelParams, ClassicalKind, KernelKind};

    let mut out = Vec::new();
    for seed in 0..10u64 {
        let (name, ds) = if seed % 2 == 0 {
            let spread = 0.6 + 0.2 * seed as f64;
            (
                format!("blobs{seed}"),
                gen_blobs(
                    12 + seed as usize,
                    &[vec![0.0, 0.0], vec![2.5, 1.0]],
                    spread,
                    seed,
                )
                .unwrap(),
            )
        } else {
            (
                format!("xor{seed}"),
                gen_hard(10 + 2 * seed as usize, HardKind::Xor, 0.1, seed).unwrap(),
            )
        };
        let y = ds.signed_labels();
        let lin = KernelKind::Classical(ClassicalKernelParams::with_defaults(
            ClassicalKind::Linear,
            2,
        ));
        let second = if seed % 2 == 0 {
            KernelKind::Classical(ClassicalKernelParams::with_defaults(ClassicalKind::Rbf, 2))
        } else {
            KernelKind::Quantum(FeatureMapConfig::new(2, 2, Entanglement::Linear).unwrap())
        };
        let first = if seed % 2 == 0 {
            lin
        } else {
            KernelKind::Classical(ClassicalKernelParams::with_defaults(ClassicalKind::Rbf, 2))
        };
        for kind in [first, second] {
            let k = kind.gram(&ds.x).unwrap();
            assert!(k.size() <= 60);
            out.push((format!("{name}/{}", k.size()), k, y.clone()));
        }
    }
    out
}

/// Decision values Σ_j α_j y_j K_ij + b recomputed from the raw model fields.
pub fn recompute_decisions(
    model: &qksvm_core::svm::SvmModel,
    k: &qksvm_core::kernels::KernelMatrix,
) -> Vec<f64> {
    (0..k.size())
        .map(|i| {
            (0..k.size())
                .map(|j| model.alphas[j] * f64::from(model.labels[j]) * k.get(i, j))
                .sum::<f64>()
                + model.bias
        })
        .collect()
}
