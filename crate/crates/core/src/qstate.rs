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

//! Single- and multi-qubit state vectors.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::linalg::log2_exact;
use crate::{QdmError, Result, C64};

/// Tolerance on `sum |a_x|^2 = 1` for a normalized state.
pub const NORM_TOL: f64 = 1e-12;

/// Basis in which a single-qubit ket is labelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    /// Eigenstates of `sigma_z`.
    Computational,
    /// Eigenstates of `sigma_x`.
    XBasis,
    /// Eigenstates of `sigma_y`.
    YBasis,
}

/// Amplitudes of an `n`-qubit pure state over the computational basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawState", try_from = "RawState")]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: DVector<C64>,
}

#[derive(Serialize, Deserialize)]
struct RawState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl From<StateVector> for RawState {
    fn from(s: StateVector) -> Self {
        RawState {
            n_qubits: s.n_qubits,
            amplitudes: s.amplitudes.iter().copied().collect(),
        }
    }
}

impl TryFrom<RawState> for StateVector {
    type Error = QdmError;

    fn try_from(raw: RawState) -> Result<Self> {
        let state = StateVector::from_amplitudes(raw.amplitudes)?;
        if state.n_qubits != raw.n_qubits {
            return Err(QdmError::LengthMismatch {
                expected: 1 << raw.n_qubits,
                found: state.dim(),
            });
        }
        Ok(state)
    }
}

impl StateVector {
    /// Wraps raw amplitudes. The length must be a power of two; no
    /// normalization is imposed.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = log2_exact(amplitudes.len()).ok_or(QdmError::NotPowerOfTwo(amplitudes.len()))?;
        Ok(StateVector {
            n_qubits,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub(crate) fn from_dvector(amplitudes: DVector<C64>) -> Self {
        let n_qubits = log2_exact(amplitudes.len()).expect("state length is a power of two");
        StateVector { n_qubits, amplitudes }
    }

    /// The basis vector `e_index` in `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(QdmError::InvalidParameter(format!(
                "basis index {index} outside 0..{dim}"
            )));
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amplitudes.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    /// Errors unless `|norm^2 - 1| <= tol`.
    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol {
            return Err(QdmError::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(QdmError::ZeroVector);
        }
        Ok(self.scale(C64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, factor: C64) -> Self {
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.map(|a| a * factor),
        }
    }

    /// `|a_x|^2` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Single-qubit ket `|label>` in the given basis. `+` combinations carry
/// label 0: `|0_x> = (|0> + |1>)/sqrt2`, `|1_y> = (|0> - i|1>)/sqrt2`.
///
/// Panics if `label > 1`.
pub fn ket(label: u8, basis: BasisKind) -> StateVector {
    assert!(label <= 1, "ket label must be 0 or 1, got {label}");
    let sign = if label == 0 { 1.0 } else { -1.0 };
    let (a, b) = match basis {
        BasisKind::Computational => {
            if label == 0 {
                (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
            } else {
                (C64::new(0.0, 0.0), C64::new(1.0, 0.0))
            }
        }
        BasisKind::XBasis => (C64::new(FRAC_1_SQRT_2, 0.0), C64::new(sign * FRAC_1_SQRT_2, 0.0)),
        BasisKind::YBasis => (C64::new(FRAC_1_SQRT_2, 0.0), C64::new(0.0, sign * FRAC_1_SQRT_2)),
    };
    StateVector {
        n_qubits: 1,
        amplitudes: DVector::from_vec(vec![a, b]),
    }
}

/// Basis index of the product state `|b_1 b_2 ... b_n>`, qubit 1 most significant.
pub fn basis_index(bits: &[u8]) -> Result<usize> {
    bits.iter().try_fold(0usize, |acc, &b| {
        if b > 1 {
            Err(QdmError::NonBinary(b))
        } else {
            Ok((acc << 1) | b as usize)
        }
    })
}

/// Bits of `index` as an `n`-qubit label, qubit 1 first.
pub fn index_bits(index: usize, n_qubits: usize) -> Vec<u8> {
    (0..n_qubits)
        .map(|k| ((index >> (n_qubits - 1 - k)) & 1) as u8)
        .collect()
}

/// Computational product state `|b_1 ... b_n>`.
pub fn ketv(bits: &[u8]) -> Result<StateVector> {
    if bits.is_empty() {
        return Err(QdmError::InvalidParameter("ketv needs at least one bit".into()));
    }
    let index = basis_index(bits)?;
    StateVector::basis(bits.len(), index)
}

/// Kronecker product, left factor varying slowest.
pub fn tensor_state(left: &StateVector, right: &StateVector) -> StateVector {
    StateVector {
        n_qubits: left.n_qubits + right.n_qubits,
        amplitudes: left.amplitudes.kronecker(&right.amplitudes),
    }
}

/// Left-to-right Kronecker product of several states.
pub fn tensor_all(states: &[StateVector]) -> Option<StateVector> {
    let (first, rest) = states.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, s| tensor_state(&acc, s)))
}

/// `<bra_of|ket>`, conjugate-linear in the first argument.
pub fn inner(bra_of: &StateVector, ket: &StateVector) -> Result<C64> {
    if bra_of.dim() != ket.dim() {
        return Err(QdmError::DimensionMismatch {
            expected: bra_of.dim(),
            found: ket.dim(),
        });
    }
    Ok(bra_of.amplitudes.dotc(&ket.amplitudes))
}

/// Outcome of a computational-basis measurement on a pure state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateMeasurement {
    /// Bits of the measured qubits, first listed most significant.
    pub outcome: usize,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Measures `qubits` of `psi` in the computational basis, drawing the
/// outcome from a ChaCha8 stream seeded with `seed`.
pub fn measure_state(psi: &StateVector, qubits: &[usize], seed: u64) -> Result<StateMeasurement> {
    let n = psi.n_qubits;
    crate::density::check_labels(n, qubits)?;
    let outcome_of = |x: usize| qubits.iter().fold(0usize, |acc, &q| (acc << 1) | ((x >> (n - q)) & 1));
    let mut probs = vec![0.0; 1 << qubits.len()];
    for (x, a) in psi.amplitudes.iter().enumerate() {
        probs[outcome_of(x)] += a.norm_sqr();
    }
    let outcome = crate::density::sample_index(&probs, &mut ChaCha8Rng::seed_from_u64(seed));
    let probability = probs[outcome];
    let scale = 1.0 / probability.sqrt();
    let post = DVector::from_fn(psi.dim(), |x, _| {
        if outcome_of(x) == outcome {
            psi.amplitudes[x] * scale
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(StateMeasurement {
        outcome,
        probability,
        post_state: StateVector::from_dvector(post),
    })
}

/// Haar-like random pure state: normalized complex Gaussian amplitudes.
pub fn random_state(n_qubits: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(n_qubits, &mut rng)
}

pub fn random_state_with<R: rand::Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n_qubits;
    loop {
        let amplitudes: Vec<C64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                C64::new(re, im)
            })
            .collect();
        let state = StateVector::from_amplitudes(amplitudes).expect("power-of-two length");
        if let Ok(s) = state.normalized() {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::sigma;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ket_fixtures() {
        assert_eq!(
            ket(0, BasisKind::Computational).amplitudes(),
            &[c(1.0, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(
            ket(0, BasisKind::XBasis).amplitudes(),
            &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]
        );
        assert_eq!(
            ket(1, BasisKind::YBasis).amplitudes(),
            &[c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)]
        );
    }

    #[test]
    #[should_panic]
    fn ket_rejects_label_two() {
        ket(2, BasisKind::Computational);
    }

    #[test]
    fn ketv_fixtures() {
        let s = ketv(&[0, 1, 1]).unwrap();
        assert_eq!(s.n_qubits(), 3);
        assert_eq!(s.amplitudes()[3], c(1.0, 0.0));
        assert_eq!(s.norm_sqr(), 1.0);
        assert_eq!(ketv(&[0]).unwrap(), ket(0, BasisKind::Computational));
        let k = tensor_state(&ket(1, BasisKind::Computational), &ket(1, BasisKind::Computational));
        assert_eq!(ketv(&[1, 1]).unwrap(), k);
    }

    #[test]
    fn ketv_rejects_non_binary() {
        assert_eq!(ketv(&[0, 2]), Err(QdmError::NonBinary(2)));
        assert!(ketv(&[]).is_err());
    }

    #[test]
    fn tensor_fixtures() {
        let z0 = ket(0, BasisKind::Computational);
        let z1 = ket(1, BasisKind::Computational);
        assert_eq!(
            tensor_state(&z0, &z1).amplitudes(),
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
        let h = FRAC_1_SQRT_2;
        assert_eq!(
            tensor_state(&ket(0, BasisKind::XBasis), &z0).amplitudes(),
            &[c(h, 0.0), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)]
        );
        assert_eq!(tensor_state(&ketv(&[0, 1]).unwrap(), &z1), ketv(&[0, 1, 1]).unwrap());
    }

    #[test]
    fn inner_fixtures() {
        let z0 = ket(0, BasisKind::Computational);
        let z1 = ket(1, BasisKind::Computational);
        assert_eq!(inner(&z0, &z1).unwrap(), c(0.0, 0.0));
        assert_eq!(inner(&ket(0, BasisKind::XBasis), &z0).unwrap(), c(FRAC_1_SQRT_2, 0.0));
        let s = ketv(&[1, 0]).unwrap();
        assert_eq!(inner(&s, &s).unwrap(), c(1.0, 0.0));
        assert!(matches!(inner(&z0, &s), Err(QdmError::DimensionMismatch { .. })));
        // conjugate-linear in the bra
        let y0 = ket(0, BasisKind::YBasis);
        assert!((inner(&y0, &z1).unwrap() - c(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn basis_kets_are_pauli_eigenvectors() {
        for (basis, axis) in [
            (BasisKind::XBasis, 1),
            (BasisKind::YBasis, 2),
            (BasisKind::Computational, 3),
        ] {
            for label in 0..2u8 {
                let k = ket(label, basis);
                let out = sigma(axis).unwrap().apply(&k).unwrap();
                let expected = k.scale(c(if label == 0 { 1.0 } else { -1.0 }, 0.0));
                assert!(out.max_abs_diff(&expected) <= 1e-15);
            }
        }
    }

    #[test]
    fn json_shape() {
        let s = ket(1, BasisKind::Computational);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["n_qubits"], 1);
        assert_eq!(v["amplitudes"], serde_json::json!([[0.0, 0.0], [1.0, 0.0]]));
        let back: StateVector = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn random_state_is_normalized_and_seeded() {
        let a = random_state(3, 11);
        assert!(a.is_normalized());
        assert_eq!(a, random_state(3, 11));
        assert_ne!(a, random_state(3, 12));
    }

    fn bits_strategy() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..2, 1..7)
    }

    proptest! {
        #[test]
        fn ketv_index_law(bits in bits_strategy()) {
            let n = bits.len();
            let s = ketv(&bits).unwrap();
            let expected: usize = bits.iter().enumerate().map(|(k, &b)| (b as usize) << (n - 1 - k)).sum();
            for (x, a) in s.amplitudes().iter().enumerate() {
                prop_assert_eq!(*a, if x == expected { c(1.0, 0.0) } else { c(0.0, 0.0) });
            }
            prop_assert_eq!(index_bits(expected, n), bits);
        }

        #[test]
        fn ketv_orthonormal((a, b) in (1usize..7).prop_flat_map(|n| {
            (prop::collection::vec(0u8..2, n), prop::collection::vec(0u8..2, n))
        })) {
            let overlap = inner(&ketv(&a).unwrap(), &ketv(&b).unwrap()).unwrap();
            prop_assert_eq!(overlap, c(if a == b { 1.0 } else { 0.0 }, 0.0));
        }

        #[test]
        fn tensor_associative(s1 in 0u64..1000, s2 in 0u64..1000, s3 in 0u64..1000) {
            let (a, b, c3) = (random_state(1, s1), random_state(2, s2), random_state(1, s3));
            let left = tensor_state(&tensor_state(&a, &b), &c3);
            let right = tensor_state(&a, &tensor_state(&b, &c3));
            // complex products round differently under regrouping
            prop_assert!(left.max_abs_diff(&right) <= 1e-15);
        }

        #[test]
        fn tensor_associative_exact_on_basis_states(a in bits_strategy(), b in bits_strategy(), c3 in bits_strategy()) {
            let (a, b, c3) = (ketv(&a).unwrap(), ketv(&b).unwrap(), ketv(&c3).unwrap());
            let left = tensor_state(&tensor_state(&a, &b), &c3);
            let right = tensor_state(&a, &tensor_state(&b, &c3));
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn state_measurement_collapses() {
        let psi = tensor_state(&ket(0, BasisKind::XBasis), &ket(1, BasisKind::Computational));
        let m = measure_state(&psi, &[2], 5).unwrap();
        assert_eq!(m.outcome, 1);
        assert!((m.probability - 1.0).abs() < 1e-15);
        for seed in 0..20 {
            let m = measure_state(&psi, &[1], seed).unwrap();
            assert!((m.probability - 0.5).abs() < 1e-15);
            let bits = [m.outcome as u8, 1];
            assert!(m.post_state.max_abs_diff(&ketv(&bits).unwrap()) < 1e-15);
        }
        assert!(measure_state(&psi, &[3], 0).is_err());
    }
}
