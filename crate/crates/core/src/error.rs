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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, QdmError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QdmError {
    #[error("expected a bit (0 or 1), found {0}")]
    NonBinary(u8),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Pauli index component {0} is outside 0..=3")]
    PauliIndexOutOfRange(u8),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("direction vector has zero norm")]
    ZeroVector,

    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("operator is not unitary (max |UU^dag - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("qubit {qubit} is outside 1..={n_qubits}")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {0} appears more than once")]
    DuplicateQubit(usize),

    #[error("projectors are not a complete orthogonal set (deviation {deviation:e})")]
    IncompleteProjectors { deviation: f64 },

    #[error("outcome {outcome} has probability {probability:e}, too small to condition on")]
    ImpossibleBranch { outcome: usize, probability: f64 },

    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
