//! Construction, circuit synthesis and simulation of code-specific Petz
//! recovery maps.
//!
//! The crate builds the noise-adapted Petz recovery channel for a quantum
//! code and a Kraus-operator noise channel, synthesizes it as an executable
//! circuit by three routes — isometric extension with partial two-level
//! decomposition, a sequence of two-outcome POVMs, and block encoding with
//! post-selection — and runs the resulting circuits on a dense pure-state /
//! density-matrix simulator under ideal or noisy gates.
//!
//! Module map:
//! - [`linalg`]: dense complex decompositions, matrix functions, unitary
//!   completion.
//! - [`channels`]: Kraus channels, Choi matrices, isometric extensions.
//! - [`codes`]: quantum code data model and the 4-qubit amplitude-damping
//!   code.
//! - [`petz`]: state- and code-specific Petz maps, fidelity, worst-case
//!   fidelity.
//! - [`iso_synth`]: exact synthesis via partial two-level decomposition.
//! - [`povm_synth`]: approximate synthesis via polar decomposition and
//!   two-outcome POVMs.
//! - [`blockenc`]: block encodings and the probabilistic W-circuit
//!   implementation.
//! - [`fidelity_est`]: direct fidelity-estimation circuits.
//! - [`simulator`]: dense circuit execution with idle and gate noise.

pub mod blockenc;
pub mod channels;
pub mod codes;
pub mod error;
pub mod fidelity_est;
pub mod iso_synth;
pub mod jsonio;
pub mod linalg;
pub mod petz;
pub mod povm_synth;
pub mod simulator;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
