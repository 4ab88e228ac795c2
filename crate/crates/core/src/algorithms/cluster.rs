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

//! Cluster-model computation: CPHASE-entangled resource states, X-basis
//! measurements and outcome-dependent Pauli corrections.

use serde::{Deserialize, Serialize};

use crate::algorithms::protocol::{product, Branch, BranchOutcome, PauliCorrection, Protocol};
use crate::density::{basis_projectors, evolve, fidelity_pure, from_state, measure_branch, DensityMatrix};
use crate::gates::{cnot, cphase, hadamard1};
use crate::pauli::{sigma_unchecked, QOperator};
use crate::qstate::{ket, tensor_all, tensor_state, BasisKind, StateVector};
use crate::{QdmError, Result};

/// `prod CPHASE[a, b] |+>^n` over `edges`.
pub fn cluster_prepare(n: usize, edges: &[(usize, usize)]) -> Result<StateVector> {
    if n < 1 {
        return Err(QdmError::InvalidParameter("cluster needs at least one qubit".into()));
    }
    let plus = ket(0, BasisKind::XBasis);
    let mut state = tensor_all(&vec![plus; n]).expect("n >= 1");
    for &(a, b) in edges {
        // the gate factory rejects out-of-range and coincident labels
        state = cphase(n, a, b)?.apply(&state)?;
    }
    Ok(state)
}

/// One-qubit transport on the two-qubit cluster for a forced outcome `a` of
/// the X measurement on qubit 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportOutcome {
    pub outcome: u8,
    pub probability: f64,
    /// Qubit 2 right after the measurement.
    pub output_state: DensityMatrix,
    /// `sigma_x^a H |psi>`.
    pub predicted: StateVector,
    /// Fidelity of `output_state` against `predicted`.
    pub prediction_fidelity: f64,
    pub correction: PauliCorrection,
    /// `sigma_x^a` applied to `output_state`.
    pub corrected_state: DensityMatrix,
    /// Fidelity of `corrected_state` against `H |psi>`, the same on both
    /// branches.
    pub corrected_fidelity: f64,
}

/// Measuring qubit 1 of `CPHASE |psi>|+>` in the X basis with outcome `a`
/// leaves qubit 2 in `sigma_x^a H |psi>`; the wire carries a Hadamard.
pub fn cluster_transport(psi: &StateVector, a: u8) -> Result<TransportOutcome> {
    if a > 1 {
        return Err(QdmError::NonBinary(a));
    }
    one_qubit_input(psi)?;
    let joint = cphase(2, 1, 2)?.apply(&tensor_state(psi, &ket(0, BasisKind::XBasis)))?;
    let projectors = basis_projectors(2, &[(1, BasisKind::XBasis)])?;
    let record = measure_branch(&from_state(&joint)?, &projectors, a as usize)?;
    let output_state = record.post_state.reduced_to(&[2])?;

    let transported = hadamard1().apply(psi)?;
    let x_a = if a == 1 {
        sigma_unchecked(1)
    } else {
        QOperator::identity(1)
    };
    let predicted = x_a.apply(&transported)?;
    let correction = transport_correction(a);
    let corrected_state = evolve(&output_state, &correction.operator())?;
    Ok(TransportOutcome {
        outcome: a,
        probability: record.probability,
        prediction_fidelity: fidelity_pure(&output_state, &predicted)?,
        corrected_fidelity: fidelity_pure(&corrected_state, &transported)?,
        output_state,
        predicted,
        correction,
        corrected_state,
    })
}

/// Both branches of [`cluster_transport`].
pub fn cluster_transport_all(psi: &StateVector) -> Result<Vec<TransportOutcome>> {
    (0..2).map(|a| cluster_transport(psi, a)).collect()
}

/// Fix-up for transport outcome `a`: `sigma_x^a`.
pub fn transport_correction(a: u8) -> PauliCorrection {
    PauliCorrection::from_bits(0, a)
}

/// Outcomes `(s2, s3)` of qubits 2 and 3. Control needs `Z^s2`, target
/// needs `Z^s2 X^s3`.
pub fn cnot_correction(bits: &[u8]) -> Vec<PauliCorrection> {
    vec![
        PauliCorrection::from_bits(bits[0], 0),
        PauliCorrection::from_bits(bits[0], bits[1]),
    ]
}

/// Four-qubit cluster CNOT. Qubit 1 is the control, qubit 2 the target
/// input, qubit 3 the middle of the target wire and qubit 4 its output.
/// Edges (1,3), (2,3), (3,4); qubits 2 and 3 are measured in the X basis.
/// The target passes two Hadamard wire segments, and the control's CPHASE on
/// the middle qubit becomes a CNOT between them.
fn cnot_protocol() -> Protocol {
    Protocol {
        n_qubits: 4,
        n_inputs: 2,
        ancilla: tensor_state(&ket(0, BasisKind::XBasis), &ket(0, BasisKind::XBasis)),
        circuit: product(&[
            cphase(4, 1, 3).expect("valid"),
            cphase(4, 2, 3).expect("valid"),
            cphase(4, 3, 4).expect("valid"),
        ]),
        measured: vec![(2, BasisKind::XBasis), (3, BasisKind::XBasis)],
        outputs: vec![1, 4],
        corrections: cnot_correction,
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

fn cnot_target(psi2: &StateVector) -> Result<StateVector> {
    if psi2.n_qubits() != 2 {
        return Err(QdmError::DimensionMismatch {
            expected: 4,
            found: psi2.dim(),
        });
    }
    psi2.check_normalized(1e-10)?;
    cnot(2, 1, 2)?.apply(psi2)
}

/// Runs the cluster CNOT on `psi2` (control first); the output pair is
/// compared against `CNOT[1,2] psi2`.
pub fn cluster_cnot(psi2: &StateVector, branch: &Branch) -> Result<BranchOutcome> {
    let target = cnot_target(psi2)?;
    cnot_protocol().run(psi2, &target, branch)
}

/// All four branches of [`cluster_cnot`].
pub fn cluster_cnot_all(psi2: &StateVector) -> Result<Vec<BranchOutcome>> {
    let target = cnot_target(psi2)?;
    cnot_protocol().run_all(psi2, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::find_pauli_correction;
    use crate::qstate::{index_bits, ketv, random_state};
    use crate::C64;

    #[test]
    fn two_qubit_cluster_expansion() {
        let s = cluster_prepare(2, &[(1, 2)]).unwrap();
        let h = C64::new(0.5, 0.0);
        let expected = StateVector::from_amplitudes(vec![h, h, h, -h]).unwrap();
        assert!(s.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn edges_commute_and_square_to_identity() {
        let edges = [(1, 2), (2, 3), (3, 4), (1, 4)];
        let a = cluster_prepare(4, &edges).unwrap();
        let b = cluster_prepare(4, &[(3, 4), (1, 4), (2, 3), (1, 2)]).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);
        let twice = cluster_prepare(3, &[(1, 2), (2, 3), (1, 2), (2, 3)]).unwrap();
        assert!(twice.max_abs_diff(&cluster_prepare(3, &[]).unwrap()) < 1e-15);
        assert!(cluster_prepare(3, &[(1, 1)]).is_err());
        assert!(cluster_prepare(3, &[(1, 4)]).is_err());
    }

    #[test]
    fn transport_of_plus_is_pure() {
        let t = cluster_transport(&ket(0, BasisKind::XBasis), 0).unwrap();
        assert!((t.output_state.purity() - 1.0).abs() < 1e-12);
        assert!((t.prediction_fidelity - 1.0).abs() < 1e-12);
        // H|+> = |0>
        assert!(
            t.output_state
                .max_abs_diff(&from_state(&ket(0, BasisKind::Computational)).unwrap())
                < 1e-12
        );
    }

    #[test]
    fn transport_needs_the_hadamard() {
        // Against sigma_x^a |psi> without H the best Pauli fix-up is not
        // enough on a generic input.
        let psi = random_state(1, 3);
        let t = cluster_transport(&psi, 0).unwrap();
        assert!(fidelity_pure(&t.output_state, &psi).unwrap() < 0.999);
    }

    #[test]
    fn transport_correction_derived() {
        for seed in 0..20 {
            let psi = random_state(1, seed);
            let h_psi = hadamard1().apply(&psi).unwrap();
            for t in cluster_transport_all(&psi).unwrap() {
                assert!((t.probability - 0.5).abs() < 1e-12);
                assert!((t.prediction_fidelity - 1.0).abs() < 1e-10);
                assert!((t.corrected_fidelity - 1.0).abs() < 1e-10);
                let (c, f) = find_pauli_correction(&t.output_state, &h_psi).unwrap();
                assert!((f - 1.0).abs() < 1e-10);
                assert_eq!(c, vec![transport_correction(t.outcome)]);
            }
        }
    }

    #[test]
    fn cnot_table_derived() {
        let protocol = cnot_protocol();
        for seed in 0..5 {
            let psi = random_state(2, 100 + seed);
            let target = cnot(2, 1, 2).unwrap().apply(&psi).unwrap();
            let prepared = protocol.prepare(&psi).unwrap();
            let projectors = basis_projectors(4, &protocol.measured).unwrap();
            for k in 0..4 {
                let record = measure_branch(&prepared, &projectors, k).unwrap();
                let out = record.post_state.reduced_to(&[1, 4]).unwrap();
                let (c, f) = find_pauli_correction(&out, &target).unwrap();
                assert!((f - 1.0).abs() < 1e-10);
                assert_eq!(c, cnot_correction(&index_bits(k, 2)));
            }
        }
    }

    #[test]
    fn cnot_truth_table() {
        for bits in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            let psi = ketv(&bits).unwrap();
            let expected = ketv(&[bits[0], bits[0] ^ bits[1]]).unwrap();
            let branches = cluster_cnot_all(&psi).unwrap();
            assert_eq!(branches.len(), 4);
            for b in branches {
                assert!(b.output_state.max_abs_diff(&from_state(&expected).unwrap()) < 1e-10);
                assert!((b.branch_probability - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cnot_random_inputs_sampled_and_forced() {
        for seed in 0..10 {
            let psi = random_state(2, seed);
            let all = cluster_cnot_all(&psi).unwrap();
            let total: f64 = all.iter().map(|b| b.branch_probability).sum();
            assert!((total - 1.0).abs() < 1e-10);
            for b in &all {
                assert!((b.fidelity - 1.0).abs() < 1e-10);
            }
            let sampled = cluster_cnot(&psi, &Branch::Sampled { seed }).unwrap();
            assert!((sampled.fidelity - 1.0).abs() < 1e-10);
        }
    }
}
