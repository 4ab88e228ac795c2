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

//! Quantum Fourier transform, as a gate circuit or as the DFT matrix.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::gates::{controlled_phase, had, swap};
use crate::pauli::QOperator;
use crate::{QdmError, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QftMethod {
    /// Hadamards, controlled phases `2 pi / 2^k` and a final qubit-reversal
    /// swap network, all from the gate factories.
    Circuit,
    /// `F_jk = omega^{jk} / sqrt(2^n)`, `omega = e^{2 pi i / 2^n}`.
    DirectDft,
}

pub fn qft(n: usize, method: QftMethod) -> Result<QOperator> {
    if n < 1 {
        return Err(QdmError::InvalidParameter("QFT needs at least one qubit".into()));
    }
    match method {
        QftMethod::Circuit => qft_circuit(n),
        QftMethod::DirectDft => Ok(dft_matrix(n)),
    }
}

fn qft_circuit(n: usize) -> Result<QOperator> {
    let mut u = QOperator::identity(n);
    for j in 1..=n {
        u = &had(n, j)? * &u;
        for k in j + 1..=n {
            let angle = 2.0 * PI / (1u64 << (k - j + 1)) as f64;
            u = &controlled_phase(n, k, j, angle)? * &u;
        }
    }
    for j in 1..=n / 2 {
        u = &swap(n, j, n + 1 - j)? * &u;
    }
    Ok(u)
}

fn dft_matrix(n: usize) -> QOperator {
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    let m = DMatrix::from_fn(dim, dim, |j, k| {
        // reduce jk mod dim before forming the angle to keep it small
        let e = (j * k) % dim;
        C64::from_polar(norm, 2.0 * PI * e as f64 / dim as f64)
    });
    QOperator::from_square(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::hadamard1;

    #[test]
    fn one_qubit_is_hadamard() {
        assert!(qft(1, QftMethod::Circuit).unwrap().max_abs_diff(&hadamard1()) < 1e-15);
        assert!(qft(1, QftMethod::DirectDft).unwrap().max_abs_diff(&hadamard1()) < 1e-15);
    }

    #[test]
    fn circuit_matches_dft() {
        for n in 1..=6 {
            let c = qft(n, QftMethod::Circuit).unwrap();
            let d = qft(n, QftMethod::DirectDft).unwrap();
            assert!(c.max_abs_diff(&d) < 1e-12, "n = {n}");
            assert!((&c * &c.adjoint()).max_abs_diff(&QOperator::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn zero_qubits_rejected() {
        assert!(qft(0, QftMethod::Circuit).is_err());
    }
}
