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

//! End-to-end protocols and algorithms built from the gate and density
//! machinery: teleportation, Grover search, QFT and Shor factoring, and the
//! cluster model.
//!
//! Protocols that end in a mid-circuit measurement (teleportation, cluster
//! transport, cluster CNOT) can be run on a sampled branch or on a forced
//! one; forcing lets tests enumerate every outcome deterministically.

pub mod cluster;
pub mod grover;
mod protocol;
pub mod qft;
pub mod shor;
pub mod teleport;

pub use protocol::{find_pauli_correction, Branch, BranchOutcome, PauliCorrection};
