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

//! Small dense helpers shared by the density-matrix functionals.

use nalgebra::DMatrix;

use crate::C64;

/// Spectral decomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(M + M^dag) / 2` first so that round-off in
/// the anti-Hermitian part cannot leak into the spectrum.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    sym.symmetric_eigenvalues().iter().copied().collect()
}

/// `V sqrt(L) V^dag` for a positive semidefinite matrix. Negative round-off
/// eigenvalues are clamped to zero.
pub(crate) fn sqrt_psd(m: &DMatrix<C64>) -> DMatrix<C64> {
    let (values, vectors) = hermitian_eigen(m);
    let mut scaled = vectors.clone();
    for (j, &lambda) in values.iter().enumerate() {
        let s = lambda.max(0.0).sqrt();
        scaled.column_mut(j).scale_mut(s);
    }
    &scaled * vectors.adjoint()
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `log2` of a power of two, or `None`.
pub(crate) fn log2_exact(len: usize) -> Option<usize> {
    if len.is_power_of_two() {
        Some(len.trailing_zeros() as usize)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_diagonal() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(4.0, 0.0),
            C64::new(0.25, 0.0),
        ]));
        let s = sqrt_psd(&m);
        assert!((s[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!((s[(1, 1)].re - 0.5).abs() < 1e-12);
        assert!(s[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        // Hermitian PSD: A^dag A
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.5),
                C64::new(0.2, -0.1),
                C64::new(-0.3, 0.0),
                C64::new(0.7, 0.4),
            ],
        );
        let m = a.adjoint() * &a;
        let s = sqrt_psd(&m);
        assert!(max_abs_diff(&(&s * &s), &m) < 1e-12);
    }

    #[test]
    fn log2() {
        assert_eq!(log2_exact(1), Some(0));
        assert_eq!(log2_exact(8), Some(3));
        assert_eq!(log2_exact(6), None);
    }
}
