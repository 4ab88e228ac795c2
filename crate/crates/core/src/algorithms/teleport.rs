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

//! Teleportation of one qubit, of a Bell pair over a GHZ resource, and of a
//! general two-qubit state over two Bell pairs.
//!
//! Every variant is simulated on density matrices: Bob prepares the
//! resource, Alice entangles her input with her share and measures, Bob
//! applies the Pauli fix-up selected by Alice's bits. The fix-up tables are
//! fixed functions of the bits alone; `tests::*_table_is_derived` re-derives
//! each entry by exhaustive Pauli search.

use crate::algorithms::protocol::{product, Branch, BranchOutcome, PauliCorrection, Protocol};
use crate::gates::{cnot, had};
use crate::qstate::{ketv, StateVector};
use crate::states::bell;
use crate::{QdmError, Result};

/// One branch of a teleportation run: Alice's bits (`measured_bits`), their
/// probability, Bob's corrected state and its fidelity against the input.
pub type TeleportOutcome = BranchOutcome;

/// Bits `(m1, m2)` from qubits 1 and 2; Bob's qubit 3 needs `Z^m1 X^m2`.
pub fn one_qubit_correction(bits: &[u8]) -> Vec<PauliCorrection> {
    vec![PauliCorrection::from_bits(bits[0], bits[1])]
}

/// Bits `(m1, m2, m3)` from qubits 1, 2, 3; Bob holds qubits 4 and 5.
pub fn bell_pair_correction(bits: &[u8]) -> Vec<PauliCorrection> {
    let (m1, m2, m3) = (bits[0], bits[1], bits[2]);
    vec![
        PauliCorrection::from_bits(m1, m3),
        PauliCorrection::from_bits(0, m2 ^ m3),
    ]
}

/// Bits `(m1, m2, m3, m4)` from qubits 1..=4; Bob holds qubits 5 and 6.
pub fn two_qubit_correction(bits: &[u8]) -> Vec<PauliCorrection> {
    vec![
        PauliCorrection::from_bits(bits[0], bits[2]),
        PauliCorrection::from_bits(bits[1], bits[3]),
    ]
}

/// Qubit 1 input; Bob makes `|B_00>` on (2, 3) and sends qubit 2 to Alice,
/// who undoes the Bell construction on (1, 2) and measures both.
fn one_qubit_protocol() -> Protocol {
    let circuit = product(&[
        had(3, 2).expect("valid"),
        cnot(3, 2, 3).expect("valid"),
        cnot(3, 1, 2).expect("valid"),
        had(3, 1).expect("valid"),
    ]);
    Protocol {
        n_qubits: 3,
        n_inputs: 1,
        ancilla: ketv(&[0, 0]).expect("bits"),
        circuit,
        measured: vec![
            (1, crate::BasisKind::Computational),
            (2, crate::BasisKind::Computational),
        ],
        outputs: vec![3],
        corrections: one_qubit_correction,
    }
}

/// Qubits (1, 2) input; Bob makes a GHZ state on (3, 4, 5) and sends qubit
/// 3. Alice folds her pair onto qubit 1 with `CNOT[1,2]`, teleports qubit 1
/// through qubit 3 and measures (1, 2, 3).
fn bell_pair_protocol() -> Protocol {
    let circuit = product(&[
        had(5, 3).expect("valid"),
        cnot(5, 3, 4).expect("valid"),
        cnot(5, 3, 5).expect("valid"),
        cnot(5, 1, 2).expect("valid"),
        cnot(5, 1, 3).expect("valid"),
        had(5, 1).expect("valid"),
    ]);
    Protocol {
        n_qubits: 5,
        n_inputs: 2,
        ancilla: ketv(&[0, 0, 0]).expect("bits"),
        circuit,
        measured: (1..=3).map(|q| (q, crate::BasisKind::Computational)).collect(),
        outputs: vec![4, 5],
        corrections: bell_pair_correction,
    }
}

/// Qubits (1, 2) input; Bob makes Bell pairs on (3, 5) and (4, 6) and sends
/// qubits 3 and 4. Alice runs the one-qubit protocol on (1, 3) and (2, 4)
/// and measures 1..=4.
fn two_qubit_protocol() -> Protocol {
    let circuit = product(&[
        had(6, 3).expect("valid"),
        cnot(6, 3, 5).expect("valid"),
        had(6, 4).expect("valid"),
        cnot(6, 4, 6).expect("valid"),
        cnot(6, 1, 3).expect("valid"),
        had(6, 1).expect("valid"),
        cnot(6, 2, 4).expect("valid"),
        had(6, 2).expect("valid"),
    ]);
    Protocol {
        n_qubits: 6,
        n_inputs: 2,
        ancilla: ketv(&[0, 0, 0, 0]).expect("bits"),
        circuit,
        measured: (1..=4).map(|q| (q, crate::BasisKind::Computational)).collect(),
        outputs: vec![5, 6],
        corrections: two_qubit_correction,
    }
}

fn one_qubit_input(psi: &StateVector) -> Result<()> {
    if psi.n_qubits() != 1 {
        return Err(QdmError::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    psi.check_normalized(1e-10)
}

fn two_qubit_input(psi: &StateVector) -> Result<()> {
    if psi.n_qubits() != 2 {
        return Err(QdmError::DimensionMismatch {
            expected: 4,
            found: psi.dim(),
        });
    }
    psi.check_normalized(1e-10)
}

pub fn teleport_one(psi: &StateVector, branch: &Branch) -> Result<TeleportOutcome> {
    one_qubit_input(psi)?;
    one_qubit_protocol().run(psi, psi, branch)
}

/// All four branches of [`teleport_one`].
pub fn teleport_one_all(psi: &StateVector) -> Result<Vec<TeleportOutcome>> {
    one_qubit_input(psi)?;
    one_qubit_protocol().run_all(psi, psi)
}

/// Checks that `psi` lies in `span{|0b>, |1b'>}` for a single `b`, the
/// family the GHZ protocol carries (it includes all four Bell states).
fn bell_pair_input(psi: &StateVector) -> Result<()> {
    two_qubit_input(psi)?;
    let p = psi.probabilities();
    let even = p[0] + p[3];
    let odd = p[1] + p[2];
    if even.min(odd) > 1e-10 {
        return Err(QdmError::InvalidParameter(
            "input must lie in span{|00>,|11>} or span{|01>,|10>}".into(),
        ));
    }
    Ok(())
}

/// Teleports `|B_ab>` over a GHZ resource.
pub fn teleport_bell(a: u8, b: u8, branch: &Branch) -> Result<TeleportOutcome> {
    if a > 1 || b > 1 {
        return Err(QdmError::NonBinary(a.max(b)));
    }
    teleport_bell_state(&bell(a, b), branch)
}

/// Every reachable branch for `|B_ab>`. Alice's second bit always equals
/// `b`, so four of the eight outcomes occur for a given input.
pub fn teleport_bell_all(a: u8, b: u8) -> Result<Vec<TeleportOutcome>> {
    if a > 1 || b > 1 {
        return Err(QdmError::NonBinary(a.max(b)));
    }
    teleport_bell_state_all(&bell(a, b))
}

/// Same protocol for any state `alpha |0b> + beta |1b'>`.
pub fn teleport_bell_state(psi: &StateVector, branch: &Branch) -> Result<TeleportOutcome> {
    bell_pair_input(psi)?;
    bell_pair_protocol().run(psi, psi, branch)
}

pub fn teleport_bell_state_all(psi: &StateVector) -> Result<Vec<TeleportOutcome>> {
    bell_pair_input(psi)?;
    bell_pair_protocol().run_all(psi, psi)
}

/// Teleports an arbitrary two-qubit state over two Bell pairs.
pub fn teleport_two(psi2: &StateVector, branch: &Branch) -> Result<TeleportOutcome> {
    two_qubit_input(psi2)?;
    two_qubit_protocol().run(psi2, psi2, branch)
}

/// All sixteen branches of [`teleport_two`].
pub fn teleport_two_all(psi2: &StateVector) -> Result<Vec<TeleportOutcome>> {
    two_qubit_input(psi2)?;
    two_qubit_protocol().run_all(psi2, psi2)
}
