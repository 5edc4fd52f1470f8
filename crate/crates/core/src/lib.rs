//! Quantum fidelity kernels on a dense statevector simulator, SVM training on
//! precomputed Gram matrices, and the experiment harness that compares them
//! with classical kernels.

pub mod data;
pub mod error;
pub mod experiment;
pub mod featuremap;
pub mod kernels;
pub mod metrics;
pub mod plot;
pub mod statevec;
pub mod svm;

pub use error::{Error, Result};
