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

use serde::{Deserialize, Serialize};

use crate::density::{
    basis_projectors, check_projectors, evolve, fidelity, from_state, measure, measure_branch, measure_branch_checked,
    DensityMatrix,
};
use crate::pauli::{embed, sigma_unchecked, QOperator};
use crate::qstate::{basis_index, index_bits, tensor_state, BasisKind, StateVector};
use crate::{QdmError, Result};

/// Which measurement outcome a protocol run follows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Condition on these outcome bits, first measured qubit first.
    Forced(Vec<u8>),
    /// Draw the outcome from the Born distribution.
    Sampled { seed: u64 },
}

/// Outcome-dependent Pauli fix-up `sigma_z^z sigma_x^x` on one qubit
/// (`sigma_x` applied first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliCorrection {
    pub z: bool,
    pub x: bool,
}

impl PauliCorrection {
    pub const NONE: PauliCorrection = PauliCorrection { z: false, x: false };

    pub fn new(z: bool, x: bool) -> Self {
        PauliCorrection { z, x }
    }

    pub fn from_bits(z: u8, x: u8) -> Self {
        PauliCorrection { z: z == 1, x: x == 1 }
    }

    pub fn operator(&self) -> QOperator {
        let x = if self.x { sigma_unchecked(1) } else { sigma_unchecked(0) };
        let z = if self.z { sigma_unchecked(3) } else { sigma_unchecked(0) };
        &z * &x
    }
}

/// `(x) corrections` as one operator, first entry on the most significant qubit.
pub(crate) fn correction_operator(corrections: &[PauliCorrection]) -> QOperator {
    let ops: Vec<QOperator> = corrections.iter().map(PauliCorrection::operator).collect();
    let placements: Vec<(usize, &QOperator)> = ops.iter().enumerate().map(|(k, op)| (k + 1, op)).collect();
    embed(corrections.len(), &placements).expect("one slot per correction")
}

/// Circuit from a gate list, `ops[0]` acting first.
pub(crate) fn product(ops: &[QOperator]) -> QOperator {
    ops.iter().skip(1).fold(ops[0].clone(), |acc, g| g * &acc)
}

/// One measurement branch of a protocol run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchOutcome {
    /// Outcome bits in measurement order.
    pub measured_bits: Vec<u8>,
    pub branch_probability: f64,
    /// Output qubits after the Pauli correction.
    pub output_state: DensityMatrix,
    /// Fidelity of `output_state` against the intended result.
    pub fidelity: f64,
    pub corrections: Vec<PauliCorrection>,
}

/// Searches all `4^m` products of `sigma_z^p sigma_x^q` for the one that
/// maps `state` closest to `target`. Returns the first maximizer in
/// `(z, x)`-lexicographic order per qubit, and its fidelity.
pub fn find_pauli_correction(state: &DensityMatrix, target: &StateVector) -> Result<(Vec<PauliCorrection>, f64)> {
    let m = state.n_qubits();
    let target_rho = from_state(target)?;
    let mut best: Option<(Vec<PauliCorrection>, f64)> = None;
    for code in 0..1usize << (2 * m) {
        let corrections: Vec<PauliCorrection> = (0..m)
            .map(|k| {
                let pair = (code >> (2 * (m - 1 - k))) & 3;
                PauliCorrection::new(pair & 2 != 0, pair & 1 != 0)
            })
            .collect();
        let fixed = evolve(state, &correction_operator(&corrections))?;
        let f = fidelity(&fixed, &target_rho)?;
        if best.as_ref().is_none_or(|(_, b)| f > *b + 1e-12) {
            best = Some((corrections, f));
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Input qubits `1..=k`, ancillas after them, one unitary, then a
/// measurement of some qubits and a Pauli fix-up on the output qubits.
pub(crate) struct Protocol {
    pub n_qubits: usize,
    pub n_inputs: usize,
    pub ancilla: StateVector,
    pub circuit: QOperator,
    pub measured: Vec<(usize, BasisKind)>,
    pub outputs: Vec<usize>,
    pub corrections: fn(&[u8]) -> Vec<PauliCorrection>,
}

impl Protocol {
    /// State just before the measurement.
    pub fn prepare(&self, input: &StateVector) -> Result<DensityMatrix> {
        if input.n_qubits() != self.n_inputs {
            return Err(QdmError::DimensionMismatch {
                expected: 1 << self.n_inputs,
                found: input.dim(),
            });
        }
        input.check_normalized(1e-10)?;
        let rho = from_state(&tensor_state(input, &self.ancilla))?;
        evolve(&rho, &self.circuit)
    }

    fn projectors(&self) -> Vec<QOperator> {
        basis_projectors(self.n_qubits, &self.measured).expect("protocol labels are valid")
    }

    fn finish(
        &self,
        bits: Vec<u8>,
        probability: f64,
        post: &DensityMatrix,
        target: &StateVector,
    ) -> Result<BranchOutcome> {
        let reduced = post.reduced_to(&self.outputs)?;
        let corrections = (self.corrections)(&bits);
        let output_state = evolve(&reduced, &correction_operator(&corrections))?;
        let fidelity = fidelity(&output_state, &from_state(target)?)?;
        Ok(BranchOutcome {
            measured_bits: bits,
            branch_probability: probability,
            output_state,
            fidelity,
            corrections,
        })
    }

    pub fn run(&self, input: &StateVector, target: &StateVector, branch: &Branch) -> Result<BranchOutcome> {
        let prepared = self.prepare(input)?;
        let projectors = self.projectors();
        let record = match branch {
            Branch::Forced(bits) => {
                if bits.len() != self.measured.len() {
                    return Err(QdmError::LengthMismatch {
                        expected: self.measured.len(),
                        found: bits.len(),
                    });
                }
                measure_branch(&prepared, &projectors, basis_index(bits)?)?
            }
            Branch::Sampled { seed } => measure(&prepared, &projectors, *seed)?,
        };
        let bits = index_bits(record.outcome, self.measured.len());
        self.finish(bits, record.probability, &record.post_state, target)
    }

    /// Every branch with nonzero probability, in outcome order.
    pub fn run_all(&self, input: &StateVector, target: &StateVector) -> Result<Vec<BranchOutcome>> {
        let prepared = self.prepare(input)?;
        let projectors = self.projectors();
        check_projectors(prepared.dim(), &projectors)?;
        let mut out = Vec::new();
        for k in 0..projectors.len() {
            match measure_branch_checked(&prepared, &projectors, k) {
                Ok(record) => {
                    let bits = index_bits(k, self.measured.len());
                    out.push(self.finish(bits, record.probability, &record.post_state, target)?);
                }
                Err(QdmError::ImpossibleBranch { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::ket;

    #[test]
    fn correction_operators() {
        assert_eq!(PauliCorrection::NONE.operator(), QOperator::identity(1));
        assert_eq!(PauliCorrection::new(false, true).operator(), sigma_unchecked(1));
        assert_eq!(PauliCorrection::new(true, false).operator(), sigma_unchecked(3));
        // Z X = i Y
        let zx = PauliCorrection::new(true, true).operator();
        assert_eq!(zx, sigma_unchecked(2).scale(crate::C64::new(0.0, 1.0)));
    }

    #[test]
    fn search_finds_bit_flip() {
        let flipped = from_state(&ket(1, BasisKind::Computational)).unwrap();
        let (c, f) = find_pauli_correction(&flipped, &ket(0, BasisKind::Computational)).unwrap();
        assert_eq!(c, vec![PauliCorrection::new(false, true)]);
        assert!((f - 1.0).abs() < 1e-12);
    }
}
