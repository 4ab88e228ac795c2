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

//! Uniform superposition, Bell, GHZ and Werner states.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::density::{from_state, DensityMatrix};
use crate::pauli::QOperator;
use crate::qstate::{basis_index, StateVector};
use crate::{QdmError, Result, C64};

/// Equal superposition of all `2^n` basis states.
pub fn uniform(n_qubits: usize) -> Result<StateVector> {
    if n_qubits < 1 {
        return Err(QdmError::InvalidParameter("uniform state needs n >= 1".into()));
    }
    let dim = 1usize << n_qubits;
    let amp = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
    StateVector::from_amplitudes(vec![amp; dim])
}

fn two_term(n_qubits: usize, first: &[u8], second: &[u8], sign: f64) -> StateVector {
    let dim = 1usize << n_qubits;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[basis_index(first).expect("bits")] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[basis_index(second).expect("bits")] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
    StateVector::from_amplitudes(amps).expect("power of two")
}

/// `|B_ab> = (|0 b> + (-1)^a |1 b'>) / sqrt2`, `b'` the complement of `b`.
///
/// Panics unless `a, b` are bits.
pub fn bell(a: u8, b: u8) -> StateVector {
    assert!(a <= 1 && b <= 1, "Bell labels must be bits");
    let sign = if a == 0 { 1.0 } else { -1.0 };
    two_term(2, &[0, b], &[1, 1 - b], sign)
}

/// `(|0 b c> + (-1)^a |1 b' c'>) / sqrt2`.
///
/// Panics unless `a, b, c` are bits.
pub fn ghz(a: u8, b: u8, c: u8) -> StateVector {
    assert!(a <= 1 && b <= 1 && c <= 1, "GHZ labels must be bits");
    let sign = if a == 0 { 1.0 } else { -1.0 };
    two_term(3, &[0, b, c], &[1, 1 - b, 1 - c], sign)
}

/// Mixing weight and Bell label of a Werner state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerParams {
    pub lambda: f64,
    pub bell_labels: (u8, u8),
}

impl WernerParams {
    pub fn new(lambda: f64, a: u8, b: u8) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(QdmError::InvalidParameter(format!(
                "Werner lambda {lambda} outside [0, 1]"
            )));
        }
        if a > 1 {
            return Err(QdmError::NonBinary(a));
        }
        if b > 1 {
            return Err(QdmError::NonBinary(b));
        }
        Ok(WernerParams {
            lambda,
            bell_labels: (a, b),
        })
    }

    /// `lambda |B_ab><B_ab| + (1 - lambda) (I/2) (x) (I/2)`.
    pub fn density(&self) -> DensityMatrix {
        let (a, b) = self.bell_labels;
        let bell_rho = from_state(&bell(a, b)).expect("normalized");
        let noise = QOperator::identity(2).scale_real(0.25 * (1.0 - self.lambda));
        let op = &bell_rho.as_operator().scale_real(self.lambda) + &noise;
        DensityMatrix::new(op).expect("convex combination of density matrices")
    }
}

/// Werner state of noisy entanglement.
pub fn werner(lambda: f64, a: u8, b: u8) -> Result<DensityMatrix> {
    Ok(WernerParams::new(lambda, a, b)?.density())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{entropy, polarization};
    use crate::gates::{cnot, had, had_mask, hall};
    use crate::qstate::{inner, ketv};

    #[test]
    fn uniform_fixtures() {
        let u1 = uniform(1).unwrap();
        assert!(u1.max_abs_diff(&crate::qstate::ket(0, crate::BasisKind::XBasis)) < 1e-15);
        let via_hall = hall(4).apply(&ketv(&[0, 0, 0, 0]).unwrap()).unwrap();
        assert!(uniform(4).unwrap().max_abs_diff(&via_hall) < 1e-15);
        for n in 1..=10 {
            assert!((uniform(n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(uniform(0).is_err());
    }

    #[test]
    fn bell_fixtures() {
        let h = FRAC_1_SQRT_2;
        let b00 = bell(0, 0);
        assert_eq!(b00.amplitudes()[0], C64::new(h, 0.0));
        assert_eq!(b00.amplitudes()[3], C64::new(h, 0.0));
        let b11 = bell(1, 1);
        assert_eq!(b11.amplitudes()[1], C64::new(h, 0.0));
        assert_eq!(b11.amplitudes()[2], C64::new(-h, 0.0));
    }

    #[test]
    fn bell_matches_circuit_and_is_orthonormal() {
        let u = &cnot(2, 1, 2).unwrap() * &had_mask(2, &[1, 0]).unwrap();
        let labels = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for &(a, b) in &labels {
            let circuit = u.apply(&ketv(&[a, b]).unwrap()).unwrap();
            assert!(bell(a, b).max_abs_diff(&circuit) < 1e-14);
            for &(c, d) in &labels {
                let g = inner(&bell(a, b), &bell(c, d)).unwrap();
                let expected = if (a, b) == (c, d) { 1.0 } else { 0.0 };
                assert!((g - C64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn ghz_matches_circuit_and_is_orthonormal() {
        let u = &(&cnot(3, 1, 2).unwrap() * &cnot(3, 1, 3).unwrap()) * &had(3, 1).unwrap();
        let triples: Vec<(u8, u8, u8)> = (0..8).map(|k| ((k >> 2) & 1, (k >> 1) & 1, k & 1)).collect();
        for &(a, b, c) in &triples {
            let circuit = u.apply(&ketv(&[a, b, c]).unwrap()).unwrap();
            assert!(ghz(a, b, c).max_abs_diff(&circuit) < 1e-14);
            for &(d, e, f) in &triples {
                let g = inner(&ghz(a, b, c), &ghz(d, e, f)).unwrap().norm();
                assert!((g - if (a, b, c) == (d, e, f) { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
        let h = FRAC_1_SQRT_2;
        let g = ghz(0, 0, 0);
        assert_eq!(g.amplitudes()[0], C64::new(h, 0.0));
        assert_eq!(g.amplitudes()[7], C64::new(h, 0.0));
    }

    #[test]
    fn bell_diagnostics() {
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let rho = from_state(&bell(a, b)).unwrap();
            assert!(entropy(&rho).abs() < 1e-9);
            for q in 1..=2 {
                assert!(polarization(&rho, q).unwrap().iter().all(|p| p.abs() < 1e-12));
                let traced = [3 - q];
                assert!((entropy(&rho.partial_trace(&traced).unwrap()) - 1.0).abs() < 1e-9);
            }
            let reduced = rho.partial_trace(&[2]).unwrap();
            assert!(reduced.max_abs_diff(&DensityMatrix::maximally_mixed(1)) < 1e-15);
        }
    }

    #[test]
    fn werner_fixtures() {
        assert!((entropy(&werner(0.0, 0, 0).unwrap()) - 2.0).abs() < 1e-9);
        assert!(entropy(&werner(1.0, 0, 0).unwrap()).abs() < 1e-9);
        for lambda in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let w = werner(lambda, 0, 0).unwrap();
            assert!(w.check_invariants().is_ok());
            assert!((entropy(&w.partial_trace(&[2]).unwrap()) - 1.0).abs() < 1e-9);
        }
        assert!((werner(0.0, 0, 0).unwrap().purity() - 0.25).abs() < 1e-15);
        assert!(werner(1.5, 0, 0).is_err());
        assert!(werner(-0.1, 0, 0).is_err());
        assert!(werner(0.5, 2, 0).is_err());
    }
}
