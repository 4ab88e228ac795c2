// Copyright 2026 The qdm Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Density-matrix quantum computer simulator.
//!
//! States are dense complex vectors over the computational basis and
//! operators are dense `2^n x 2^n` matrices. Qubits are labelled `1..=n`
//! with qubit 1 the most significant bit of the basis index, so the product
//! state `|a_1 a_2 ... a_n>` sits at index `sum_k a_k 2^(n-k)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`]: kets in the computational, X and Y bases, product states.
//! * [`pauli`]: Pauli matrices, Pauli strings, coefficient expansion,
//!   rotations and projectors.
//! * [`density`]: the density matrix and its functionals (purity, entropy,
//!   fidelity, polarization), partial traces and projective measurement.
//! * [`gates`]: gate factories embedded in an `L`-qubit register.
//! * [`states`]: uniform superposition, Bell, GHZ and Werner states.
//! * [`algorithms`]: teleportation, Grover search, QFT and Shor factoring,
//!   and the cluster (one-way) model.

pub mod algorithms;
pub mod density;
mod error;
pub mod gates;
pub(crate) mod linalg;
pub mod pauli;
pub mod qstate;
pub mod states;

pub use error::{QdmError, Result};

pub use density::{DensityMatrix, MeasurementRecord, Polarization};
pub use pauli::{PauliCoefficients, PauliIndex, QOperator};
pub use qstate::{BasisKind, StateMeasurement, StateVector};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
