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

//! Gate factories for an `L`-qubit register.
//!
//! Multi-qubit gates are assembled from projector sums, e.g.
//! `CNOT[c,t] = |0><0|_c (x) I + |1><1|_c (x) sigma_x^t`, which handles a
//! control above or below the target without special cases.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::density::check_labels;
use crate::pauli::{embed, projector, sigma_unchecked, QOperator};
use crate::qstate::{BasisKind, StateVector};
use crate::{QdmError, Result, C64};

/// Qubit labels of one gate application inside an `n_qubits` register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GatePlacement {
    pub n_qubits: usize,
    pub qubits: Vec<usize>,
}

impl GatePlacement {
    /// Labels must be distinct and in `1..=n_qubits`.
    pub fn new(n_qubits: usize, qubits: Vec<usize>) -> Result<Self> {
        check_labels(n_qubits, &qubits)?;
        Ok(GatePlacement { n_qubits, qubits })
    }
}

fn p0() -> QOperator {
    projector(0, BasisKind::Computational)
}

fn p1() -> QOperator {
    projector(1, BasisKind::Computational)
}

/// `(sigma_x + sigma_z) / sqrt2`.
pub fn hadamard1() -> QOperator {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    QOperator::from_row_slice(2, &[h, h, h, -h]).expect("2x2")
}

/// Hadamard on every qubit whose mask entry is 1.
pub fn had_mask(n_qubits: usize, mask: &[u8]) -> Result<QOperator> {
    if mask.len() != n_qubits {
        return Err(QdmError::LengthMismatch {
            expected: n_qubits,
            found: mask.len(),
        });
    }
    if let Some(&bad) = mask.iter().find(|&&m| m > 1) {
        return Err(QdmError::NonBinary(bad));
    }
    let h = hadamard1();
    let placements: Vec<(usize, &QOperator)> = mask
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m == 1)
        .map(|(k, _)| (k + 1, &h))
        .collect();
    embed(n_qubits, &placements)
}

/// Hadamard on qubit `q` only.
pub fn had(n_qubits: usize, q: usize) -> Result<QOperator> {
    one_op(n_qubits, q, &hadamard1())
}

/// Hadamard on every qubit.
pub fn hall(n_qubits: usize) -> QOperator {
    had_mask(n_qubits, &vec![1; n_qubits]).expect("mask length matches")
}

/// `op` on qubit `q`, identity elsewhere.
pub fn one_op(n_qubits: usize, q: usize, op: &QOperator) -> Result<QOperator> {
    embed(n_qubits, &[(q, op)])
}

pub fn two_op(n_qubits: usize, q1: usize, q2: usize, op1: &QOperator, op2: &QOperator) -> Result<QOperator> {
    embed(n_qubits, &[(q1, op1), (q2, op2)])
}

#[allow(clippy::too_many_arguments)]
pub fn three_op(
    n_qubits: usize,
    q1: usize,
    q2: usize,
    q3: usize,
    op1: &QOperator,
    op2: &QOperator,
    op3: &QOperator,
) -> Result<QOperator> {
    embed(n_qubits, &[(q1, op1), (q2, op2), (q3, op3)])
}

/// `|0><0|_c (x) I + |1><1|_c (x) omega_t`.
pub fn controlled_op(n_qubits: usize, c: usize, t: usize, omega: &QOperator) -> Result<QOperator> {
    if omega.dim() != 2 {
        return Err(QdmError::DimensionMismatch {
            expected: 2,
            found: omega.dim(),
        });
    }
    check_labels(n_qubits, &[c, t])?;
    let idle = one_op(n_qubits, c, &p0())?;
    let active = two_op(n_qubits, c, t, &p1(), omega)?;
    Ok(&idle + &active)
}

pub fn cnot(n_qubits: usize, c: usize, t: usize) -> Result<QOperator> {
    controlled_op(n_qubits, c, t, &sigma_unchecked(1))
}

/// Controlled `sigma_z`; symmetric in its two qubits.
pub fn cphase(n_qubits: usize, c: usize, t: usize) -> Result<QOperator> {
    controlled_op(n_qubits, c, t, &sigma_unchecked(3))
}

/// Controlled `i sigma_y`.
pub fn crot(n_qubits: usize, c: usize, t: usize) -> Result<QOperator> {
    controlled_op(n_qubits, c, t, &sigma_unchecked(2).scale(C64::new(0.0, 1.0)))
}

/// Alias of `controlled_op` with `sigma_x`.
pub fn controlled_x(n_qubits: usize, c: usize, t: usize) -> Result<QOperator> {
    controlled_op(n_qubits, c, t, &sigma_unchecked(1))
}

/// Alias of `controlled_op` with `sigma_y` (no factor of `i`, unlike [`crot`]).
pub fn controlled_y(n_qubits: usize, c: usize, t: usize) -> Result<QOperator> {
    controlled_op(n_qubits, c, t, &sigma_unchecked(2))
}

/// Controlled phase `diag(1, e^{i phi})` on the target.
pub fn controlled_phase(n_qubits: usize, c: usize, t: usize, phi: f64) -> Result<QOperator> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let phase = QOperator::from_row_slice(2, &[one, zero, zero, C64::from_polar(1.0, phi)])?;
    controlled_op(n_qubits, c, t, &phase)
}

/// Three-CNOT swap of qubits `q1` and `q2`.
pub fn swap(n_qubits: usize, q1: usize, q2: usize) -> Result<QOperator> {
    let a = cnot(n_qubits, q1, q2)?;
    let b = cnot(n_qubits, q2, q1)?;
    Ok(&(&a * &b) * &a)
}

/// Flips `t` only when both controls are 1.
pub fn toffoli(n_qubits: usize, c1: usize, c2: usize, t: usize) -> Result<QOperator> {
    check_labels(n_qubits, &[c1, c2, t])?;
    let id = QOperator::identity(1);
    let x = sigma_unchecked(1);
    let (p0, p1) = (p0(), p1());
    let mut total = QOperator::zeros(n_qubits);
    for (a, b, op) in [(&p0, &p0, &id), (&p0, &p1, &id), (&p1, &p0, &id), (&p1, &p1, &x)] {
        total = &total + &three_op(n_qubits, c1, c2, t, a, b, op)?;
    }
    Ok(total)
}

/// Applies a single-qubit operator to qubit `q` of a state vector by index
/// arithmetic. Must agree with `one_op(n, q, op).apply(state)`.
pub fn apply_one(state: &StateVector, q: usize, op: &QOperator) -> Result<StateVector> {
    let n = state.n_qubits();
    check_labels(n, &[q])?;
    if op.dim() != 2 {
        return Err(QdmError::DimensionMismatch {
            expected: 2,
            found: op.dim(),
        });
    }
    let bit = 1usize << (n - q);
    let amps = state.amplitudes();
    let mut out = amps.to_vec();
    for x in (0..amps.len()).filter(|x| x & bit == 0) {
        let (a0, a1) = (amps[x], amps[x | bit]);
        out[x] = op.entry(0, 0) * a0 + op.entry(0, 1) * a1;
        out[x | bit] = op.entry(1, 0) * a0 + op.entry(1, 1) * a1;
    }
    StateVector::from_amplitudes(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{sigma, sp, PauliIndex};
    use crate::qstate::{index_bits, ket, ketv};
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn real_matrix(rows: &[[f64; 4]; 4]) -> QOperator {
        let entries: Vec<C64> = rows.iter().flatten().map(|&x| c(x)).collect();
        QOperator::from_row_slice(4, &entries).unwrap()
    }

    #[test]
    fn hadamard_fixtures() {
        let h = hadamard1();
        let out = h.apply(&ket(0, BasisKind::Computational)).unwrap();
        assert_eq!(out, ket(0, BasisKind::XBasis));
        assert!((&h * &h).max_abs_diff(&QOperator::identity(1)) < 1e-15);
        let sum = (&sigma(1).unwrap() + &sigma(3).unwrap()).scale_real(FRAC_1_SQRT_2);
        assert_eq!(h, sum);
    }

    #[test]
    fn had_mask_fixtures() {
        let h = hadamard1();
        let expected = crate::pauli::tensor_op(&crate::pauli::tensor_op(&h, &QOperator::identity(1)), &h);
        assert_eq!(had_mask(3, &[1, 0, 1]).unwrap(), expected);
        assert_eq!(had_mask(2, &[0, 0]).unwrap(), QOperator::identity(2));
        assert!(had_mask(2, &[1]).is_err());
        assert_eq!(two_op(3, 1, 3, &h, &h).unwrap(), expected);
        assert_eq!(had(3, 2).unwrap(), had_mask(3, &[0, 1, 0]).unwrap());
        let uniform = hall(3).apply(&ketv(&[0, 0, 0]).unwrap()).unwrap();
        for a in uniform.amplitudes() {
            assert!((a - c(1.0 / 8f64.sqrt())).norm() < 1e-15);
        }
    }

    #[test]
    fn two_qubit_matrix_fixtures() {
        let cnot_m = real_matrix(&[[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., 1., 0.]]);
        assert_eq!(cnot(2, 1, 2).unwrap(), cnot_m);
        let cphase_m = real_matrix(&[[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 0.], [0., 0., 0., -1.]]);
        assert_eq!(cphase(2, 1, 2).unwrap(), cphase_m);
        assert_eq!(cphase(2, 2, 1).unwrap(), cphase_m);
        let crot_m = real_matrix(&[[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]]);
        assert_eq!(crot(2, 1, 2).unwrap(), crot_m);
    }

    #[test]
    fn controlled_fixtures() {
        let b = |bits: &[u8]| ketv(bits).unwrap();
        assert_eq!(cnot(2, 1, 2).unwrap().apply(&b(&[1, 0])).unwrap(), b(&[1, 1]));
        assert_eq!(crot(2, 1, 2).unwrap().apply(&b(&[1, 1])).unwrap(), b(&[1, 0]));
        assert_eq!(
            crot(2, 1, 2).unwrap().apply(&b(&[1, 0])).unwrap(),
            b(&[1, 1]).scale(c(-1.0))
        );
        for t in 0..2 {
            assert_eq!(crot(2, 1, 2).unwrap().apply(&b(&[0, t])).unwrap(), b(&[0, t]));
        }
        assert_eq!(
            controlled_op(2, 1, 2, &sigma(1).unwrap()).unwrap(),
            cnot(2, 1, 2).unwrap()
        );
        assert_eq!(
            controlled_op(2, 1, 2, &sigma(3).unwrap()).unwrap(),
            cphase(2, 1, 2).unwrap()
        );
        assert_eq!(
            controlled_op(2, 1, 2, &QOperator::identity(1)).unwrap(),
            QOperator::identity(2)
        );
        assert_eq!(controlled_x(3, 3, 1).unwrap(), cnot(3, 3, 1).unwrap());
        assert_eq!(
            controlled_y(2, 1, 2).unwrap().apply(&b(&[1, 0])).unwrap(),
            b(&[1, 1]).scale(C64::new(0.0, 1.0))
        );
        let big = cnot(6, 3, 5).unwrap();
        assert_eq!(big.dim(), 64);
        assert!((&big * &big).max_abs_diff(&QOperator::identity(6)) == 0.0);
        let sp23 = sp(2, &PauliIndex::new(vec![2, 3]).unwrap()).unwrap();
        assert_eq!(two_op(2, 1, 2, &sigma(2).unwrap(), &sigma(3).unwrap()).unwrap(), sp23);
        assert_eq!(
            three_op(
                3,
                1,
                2,
                3,
                &QOperator::identity(1),
                &QOperator::identity(1),
                &QOperator::identity(1)
            )
            .unwrap(),
            QOperator::identity(3)
        );
    }

    #[test]
    fn placement_errors() {
        assert!(matches!(cnot(2, 1, 1), Err(QdmError::DuplicateQubit(1))));
        assert!(matches!(cnot(2, 1, 3), Err(QdmError::QubitOutOfRange { .. })));
        assert!(matches!(toffoli(3, 1, 1, 2), Err(QdmError::DuplicateQubit(1))));
        assert!(matches!(swap(3, 2, 2), Err(QdmError::DuplicateQubit(2))));
        let four = QOperator::identity(2);
        assert!(matches!(
            controlled_op(3, 1, 2, &four),
            Err(QdmError::DimensionMismatch { .. })
        ));
        assert!(two_op(3, 2, 2, &sigma(1).unwrap(), &sigma(1).unwrap()).is_err());
        assert!(GatePlacement::new(3, vec![1, 4]).is_err());
        assert!(GatePlacement::new(3, vec![1, 3]).is_ok());
    }

    #[test]
    fn swap_fixtures() {
        let s = swap(2, 1, 2).unwrap();
        assert_eq!(s.apply(&ketv(&[0, 1]).unwrap()).unwrap(), ketv(&[1, 0]).unwrap());
        assert_eq!(&s * &s, QOperator::identity(2));
    }

    #[test]
    fn toffoli_truth_table() {
        let t = toffoli(3, 1, 2, 3).unwrap();
        for x in 0..8 {
            let bits = index_bits(x, 3);
            let mut out = bits.clone();
            if bits[0] == 1 && bits[1] == 1 {
                out[2] ^= 1;
            }
            assert_eq!(t.apply(&ketv(&bits).unwrap()).unwrap(), ketv(&out).unwrap());
        }
        assert_eq!(&t * &t, QOperator::identity(3));
    }

    fn placement(max_l: usize, arity: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
        (arity.max(2)..=max_l).prop_flat_map(move |l| {
            (Just(l), Just((1..=l).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(move |(l, labels)| (l, labels[..arity].to_vec()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gates_are_unitary((l, q) in placement(6, 3), mask_seed in any::<u64>()) {
            let mask: Vec<u8> = (0..l).map(|k| ((mask_seed >> k) & 1) as u8).collect();
            let gates = [
                cnot(l, q[0], q[1]).unwrap(),
                cphase(l, q[0], q[1]).unwrap(),
                crot(l, q[0], q[1]).unwrap(),
                swap(l, q[0], q[1]).unwrap(),
                toffoli(l, q[0], q[1], q[2]).unwrap(),
                had_mask(l, &mask).unwrap(),
                controlled_phase(l, q[0], q[2], 0.37).unwrap(),
            ];
            for g in &gates {
                prop_assert!(g.unitarity_deviation() < 1e-12);
            }
            let hm = &gates[5];
            prop_assert!((hm * hm).max_abs_diff(&QOperator::identity(l)) < 1e-12);
        }

        #[test]
        fn cnot_is_controlled_x((l, q) in placement(5, 2)) {
            prop_assert_eq!(cnot(l, q[0], q[1]).unwrap(), controlled_op(l, q[0], q[1], &sigma(1).unwrap()).unwrap());
        }

        #[test]
        fn classical_truth_tables((l, q) in placement(4, 3)) {
            let cn = cnot(l, q[0], q[1]).unwrap();
            let sw = swap(l, q[0], q[1]).unwrap();
            let tf = toffoli(l, q[0], q[1], q[2]).unwrap();
            for x in 0..(1usize << l) {
                let bits = index_bits(x, l);
                let input = ketv(&bits).unwrap();

                let mut flipped = bits.clone();
                flipped[q[1] - 1] ^= bits[q[0] - 1];
                prop_assert_eq!(cn.apply(&input).unwrap(), ketv(&flipped).unwrap());

                let mut swapped = bits.clone();
                swapped.swap(q[0] - 1, q[1] - 1);
                prop_assert_eq!(sw.apply(&input).unwrap(), ketv(&swapped).unwrap());

                let mut toggled = bits.clone();
                toggled[q[2] - 1] ^= bits[q[0] - 1] & bits[q[1] - 1];
                prop_assert_eq!(tf.apply(&input).unwrap(), ketv(&toggled).unwrap());
            }
        }

        #[test]
        fn index_applier_matches_matrix(n in 1usize..5, q in 1usize..5, seed in any::<u64>()) {
            prop_assume!(q <= n);
            let state = crate::qstate::random_state(n, seed);
            let h = hadamard1();
            let a = apply_one(&state, q, &h).unwrap();
            let b = had(n, q).unwrap().apply(&state).unwrap();
            prop_assert!(a.max_abs_diff(&b) < 1e-14);
        }
    }
}
