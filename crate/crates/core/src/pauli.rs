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

//! Pauli matrices and Pauli strings, operator expansion in the Pauli basis,
//! spin rotations and projectors.
//!
//! An `n`-qubit Pauli string `sigma_{a_1} (x) ... (x) sigma_{a_n}` is named by
//! a [`PauliIndex`] `a` with entries in `0..=3` (`0` is the identity). The
//! `4^n` strings are orthogonal under the trace inner product,
//! `Tr[SP(a) SP(b)] = 2^n delta_ab`, so any operator expands as
//! `sum_a C_a SP(a)` with `C_a = Tr[op SP(a)] / 2^n`.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::linalg::{log2_exact, max_abs_diff};
use crate::qstate::{BasisKind, StateVector};
use crate::{QdmError, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense operator on `n` qubits, a `2^n x 2^n` complex matrix.
///
/// Unitarity and Hermiticity are properties of particular factories and are
/// checked where they matter, not imposed here. `n_qubits == 0` is the
/// `1 x 1` scalar left over when every qubit has been traced out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawOperator", try_from = "RawOperator")]
pub struct QOperator {
    n_qubits: usize,
    matrix: DMatrix<C64>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RawOperator {
    pub(crate) dimension: usize,
    /// Row-major.
    pub(crate) entries: Vec<C64>,
}

impl From<QOperator> for RawOperator {
    fn from(op: QOperator) -> Self {
        let dimension = op.dim();
        let entries = (0..dimension)
            .flat_map(|r| (0..dimension).map(move |c| (r, c)))
            .map(|(r, c)| op.matrix[(r, c)])
            .collect();
        RawOperator { dimension, entries }
    }
}

impl TryFrom<RawOperator> for QOperator {
    type Error = QdmError;

    fn try_from(raw: RawOperator) -> Result<Self> {
        if raw.entries.len() != raw.dimension * raw.dimension {
            return Err(QdmError::LengthMismatch {
                expected: raw.dimension * raw.dimension,
                found: raw.entries.len(),
            });
        }
        QOperator::from_row_slice(raw.dimension, &raw.entries)
    }
}

impl QOperator {
    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(QdmError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let n_qubits = log2_exact(matrix.nrows()).ok_or(QdmError::NotPowerOfTwo(matrix.nrows()))?;
        Ok(QOperator { n_qubits, matrix })
    }

    /// Builds a `dim x dim` operator from row-major entries.
    pub fn from_row_slice(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(QdmError::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Infallible constructor for matrices whose shape is known to be valid.
    pub(crate) fn from_square(matrix: DMatrix<C64>) -> Self {
        debug_assert_eq!(matrix.nrows(), matrix.ncols());
        let n_qubits = log2_exact(matrix.nrows()).expect("power-of-two dimension");
        QOperator { n_qubits, matrix }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        QOperator {
            n_qubits,
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        QOperator {
            n_qubits,
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    /// Outer product `|ket><bra_of|`.
    pub fn outer(ket: &StateVector, bra_of: &StateVector) -> Result<Self> {
        if ket.dim() != bra_of.dim() {
            return Err(QdmError::DimensionMismatch {
                expected: ket.dim(),
                found: bra_of.dim(),
            });
        }
        Ok(Self::from_square(ket.as_dvector() * bra_of.as_dvector().adjoint()))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        QOperator {
            n_qubits: self.n_qubits,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn scale(&self, factor: C64) -> Self {
        QOperator {
            n_qubits: self.n_qubits,
            matrix: self.matrix.map(|x| x * factor),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    fn check_same_dim(&self, other_dim: usize) -> Result<()> {
        if self.dim() != other_dim {
            return Err(QdmError::DimensionMismatch {
                expected: self.dim(),
                found: other_dim,
            });
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &QOperator) -> Result<Self> {
        self.check_same_dim(rhs.dim())?;
        Ok(QOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.check_same_dim(state.dim())?;
        Ok(StateVector::from_dvector(&self.matrix * state.as_dvector()))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &QOperator) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        max_abs_diff(&self.matrix, &other.matrix)
    }

    /// `max |U U^dag - I|` entrywise.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<C64>::identity(self.dim(), self.dim());
        max_abs_diff(&product, &id)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() < tol
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        max_abs_diff(&self.matrix, &self.matrix.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }
}

impl Mul for &QOperator {
    type Output = QOperator;

    /// Panics on dimension mismatch; see [`QOperator::compose`].
    fn mul(self, rhs: &QOperator) -> QOperator {
        self.compose(rhs).expect("operator dimensions agree")
    }
}

impl Mul<&StateVector> for &QOperator {
    type Output = StateVector;

    fn mul(self, rhs: &StateVector) -> StateVector {
        self.apply(rhs).expect("operator and state dimensions agree")
    }
}

impl Add for &QOperator {
    type Output = QOperator;

    fn add(self, rhs: &QOperator) -> QOperator {
        self.check_same_dim(rhs.dim()).expect("operator dimensions agree");
        QOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &QOperator {
    type Output = QOperator;

    fn sub(self, rhs: &QOperator) -> QOperator {
        self.check_same_dim(rhs.dim()).expect("operator dimensions agree");
        QOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

fn mat2(entries: [C64; 4]) -> QOperator {
    QOperator::from_square(DMatrix::from_row_slice(2, 2, &entries))
}

/// Pauli matrix `sigma_i`: `0` identity, `1` x, `2` y, `3` z.
pub fn sigma(i: u8) -> Result<QOperator> {
    Ok(match i {
        0 => mat2([ONE, ZERO, ZERO, ONE]),
        1 => mat2([ZERO, ONE, ONE, ZERO]),
        2 => mat2([ZERO, -I, I, ZERO]),
        3 => mat2([ONE, ZERO, ZERO, -ONE]),
        _ => return Err(QdmError::PauliIndexOutOfRange(i)),
    })
}

pub(crate) fn sigma_unchecked(i: u8) -> QOperator {
    sigma(i).expect("Pauli index in 0..=3")
}

/// Raising operator `sigma_x + i sigma_y = [[0, 2], [0, 0]]`.
///
/// No factor of one half: `sigma_+ |0> = 0` and the nonzero entry is 2.
pub fn sigma_plus() -> QOperator {
    mat2([ZERO, C64::new(2.0, 0.0), ZERO, ZERO])
}

/// Lowering operator `sigma_x - i sigma_y = [[0, 0], [2, 0]]`.
pub fn sigma_minus() -> QOperator {
    mat2([ZERO, ZERO, C64::new(2.0, 0.0), ZERO])
}

/// Kronecker product, left factor varying slowest.
pub fn tensor_op(left: &QOperator, right: &QOperator) -> QOperator {
    QOperator {
        n_qubits: left.n_qubits + right.n_qubits,
        matrix: left.matrix.kronecker(&right.matrix),
    }
}

/// Names one Pauli string: component `k` selects the Pauli matrix on qubit `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliIndex(Vec<u8>);

impl PauliIndex {
    pub fn new(components: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = components.iter().find(|&&a| a > 3) {
            return Err(QdmError::PauliIndexOutOfRange(bad));
        }
        Ok(PauliIndex(components))
    }

    /// The `ordinal`-th index in base-4 lexicographic order, qubit 1 most significant.
    pub fn from_ordinal(n_qubits: usize, ordinal: usize) -> Self {
        PauliIndex(
            (0..n_qubits)
                .map(|k| ((ordinal >> (2 * (n_qubits - 1 - k))) & 3) as u8)
                .collect(),
        )
    }

    pub fn ordinal(&self) -> usize {
        self.0.iter().fold(0, |acc, &a| (acc << 2) | a as usize)
    }

    pub fn components(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `SP(a)|x> = phase(x) |x ^ flip>`. Returns `(flip, y_mask, yz_mask, i^{#y})`
    /// so that `phase(x) = i^{#y} (-1)^{popcount(x & yz_mask)}`.
    fn action(&self) -> PauliAction {
        let n = self.0.len();
        let mut flip = 0usize;
        let mut sign_mask = 0usize;
        let mut n_y = 0u32;
        for (k, &a) in self.0.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            match a {
                1 => flip |= bit,
                2 => {
                    flip |= bit;
                    sign_mask |= bit;
                    n_y += 1;
                }
                3 => sign_mask |= bit,
                _ => {}
            }
        }
        let global = match n_y % 4 {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        };
        PauliAction {
            flip,
            sign_mask,
            global,
        }
    }
}

struct PauliAction {
    flip: usize,
    sign_mask: usize,
    global: C64,
}

impl PauliAction {
    /// Nonzero entry of column `x`: row `x ^ flip`.
    fn phase(&self, x: usize) -> C64 {
        if (x & self.sign_mask).count_ones() % 2 == 1 {
            -self.global
        } else {
            self.global
        }
    }
}

/// Pauli string `sigma_{a_1} (x) ... (x) sigma_{a_n}` as a dense matrix.
pub fn sp(n: usize, a: &PauliIndex) -> Result<QOperator> {
    if a.len() != n {
        return Err(QdmError::LengthMismatch {
            expected: n,
            found: a.len(),
        });
    }
    Ok(a.components()
        .iter()
        .fold(QOperator::identity(0), |acc, &ai| tensor_op(&acc, &sigma_unchecked(ai))))
}

/// `Tr[op SP(a)]`, evaluated in `O(2^n)` using the monomial structure of
/// Pauli strings.
pub fn pauli_trace(op: &QOperator, a: &PauliIndex) -> Result<C64> {
    if a.len() != op.n_qubits() {
        return Err(QdmError::LengthMismatch {
            expected: op.n_qubits(),
            found: a.len(),
        });
    }
    Ok(pauli_trace_unchecked(op, a))
}

fn pauli_trace_unchecked(op: &QOperator, a: &PauliIndex) -> C64 {
    let action = a.action();
    let m = op.matrix();
    (0..op.dim()).map(|x| m[(x, x ^ action.flip)] * action.phase(x)).sum()
}

/// Coefficients `C_a = Tr[op SP(a)] / 2^n` for all `4^n` Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCoefficients {
    n_qubits: usize,
    coefficients: Vec<C64>,
}

impl PauliCoefficients {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, a: &PauliIndex) -> C64 {
        self.coefficients[a.ordinal()]
    }

    /// Coefficients in base-4 lexicographic order of their index.
    pub fn as_slice(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn iter(&self) -> impl Iterator<Item = (PauliIndex, C64)> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, &c)| (PauliIndex::from_ordinal(self.n_qubits, k), c))
    }

    /// Largest imaginary part; zero up to round-off for Hermitian sources.
    pub fn max_imag(&self) -> f64 {
        self.coefficients.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.re).collect()
    }

    /// `sum_a C_a SP(a)`.
    pub fn reconstruct(&self) -> QOperator {
        reconstruct(self.n_qubits, self.iter())
    }
}

pub(crate) fn reconstruct(n_qubits: usize, terms: impl Iterator<Item = (PauliIndex, C64)>) -> QOperator {
    let dim = 1usize << n_qubits;
    let mut m = DMatrix::zeros(dim, dim);
    for (a, c) in terms {
        if c == ZERO {
            continue;
        }
        let action = a.action();
        for x in 0..dim {
            m[(x ^ action.flip, x)] += c * action.phase(x);
        }
    }
    QOperator::from_square(m)
}

pub fn pauli_coefficients(op: &QOperator) -> PauliCoefficients {
    let n = op.n_qubits();
    let norm = 1.0 / op.dim() as f64;
    let coefficients = (0..1usize << (2 * n))
        .map(|k| pauli_trace_unchecked(op, &PauliIndex::from_ordinal(n, k)) * norm)
        .collect();
    PauliCoefficients {
        n_qubits: n,
        coefficients,
    }
}

/// Single coefficient `C_a`.
pub fn pauli_coefficient(op: &QOperator, a: &PauliIndex) -> Result<C64> {
    Ok(pauli_trace(op, a)? / op.dim() as f64)
}

fn unit(v: [f64; 3]) -> Result<[f64; 3]> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(QdmError::ZeroVector);
    }
    Ok([v[0] / norm, v[1] / norm, v[2] / norm])
}

/// `sigma . n` for a unit vector `n`.
fn sigma_dot_unit(n: [f64; 3]) -> QOperator {
    let (x, y, z) = (n[0], n[1], n[2]);
    mat2([C64::new(z, 0.0), C64::new(x, -y), C64::new(x, y), C64::new(-z, 0.0)])
}

/// `sigma . n / |n|`.
pub fn sigma_dot(direction: [f64; 3]) -> Result<QOperator> {
    Ok(sigma_dot_unit(unit(direction)?))
}

/// Spin rotation `exp(-i gamma/2 sigma . eta) = cos(gamma/2) I - i sin(gamma/2) sigma . eta`.
/// The axis is normalized internally.
pub fn rot_axis(gamma: f64, axis: [f64; 3]) -> Result<QOperator> {
    let n = unit(axis)?;
    let (s, c) = (gamma / 2.0).sin_cos();
    let id = QOperator::identity(1).scale_real(c);
    Ok(&id + &sigma_dot_unit(n).scale(C64::new(0.0, -s)))
}

/// Spin-up state along `n(theta, phi)`:
/// `(cos(theta/2) e^{-i phi/2}, sin(theta/2) e^{i phi/2})`.
pub fn rot_to(theta: f64, phi: f64) -> StateVector {
    let (s, c) = (theta / 2.0).sin_cos();
    StateVector::from_amplitudes(vec![C64::from_polar(c, -phi / 2.0), C64::from_polar(s, phi / 2.0)])
        .expect("two amplitudes")
}

/// Unit vector `n(theta, phi)` in Cartesian components.
pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Projector `(I + (-1)^a sigma . n) / 2` onto outcome `a` along `dir`.
pub fn proj_general(a: u8, dir: [f64; 3]) -> Result<QOperator> {
    if a > 1 {
        return Err(QdmError::NonBinary(a));
    }
    let n = unit(dir)?;
    let sign = if a == 0 { 0.5 } else { -0.5 };
    Ok(&QOperator::identity(1).scale_real(0.5) + &sigma_dot_unit(n).scale_real(sign))
}

/// Projector onto `ket(a, basis)`.
///
/// Panics if `a > 1`.
pub fn projector(a: u8, basis: BasisKind) -> QOperator {
    assert!(a <= 1, "projector label must be 0 or 1, got {a}");
    let half = C64::new(0.5, 0.0);
    let s = if a == 0 { 1.0 } else { -1.0 };
    match basis {
        BasisKind::Computational => {
            if a == 0 {
                mat2([ONE, ZERO, ZERO, ZERO])
            } else {
                mat2([ZERO, ZERO, ZERO, ONE])
            }
        }
        BasisKind::XBasis => mat2([half, half * s, half * s, half]),
        BasisKind::YBasis => mat2([half, C64::new(0.0, -0.5 * s), C64::new(0.0, 0.5 * s), half]),
    }
}

/// Places single-qubit operators at the given labels of an `n`-qubit
/// register, identity elsewhere.
pub fn embed(n_qubits: usize, placements: &[(usize, &QOperator)]) -> Result<QOperator> {
    let mut slots: Vec<Option<&QOperator>> = vec![None; n_qubits];
    for &(q, op) in placements {
        if q == 0 || q > n_qubits {
            return Err(QdmError::QubitOutOfRange { qubit: q, n_qubits });
        }
        if op.dim() != 2 {
            return Err(QdmError::DimensionMismatch {
                expected: 2,
                found: op.dim(),
            });
        }
        if slots[q - 1].replace(op).is_some() {
            return Err(QdmError::DuplicateQubit(q));
        }
    }
    let id = QOperator::identity(1);
    Ok(slots
        .iter()
        .fold(QOperator::identity(0), |acc, slot| tensor_op(&acc, slot.unwrap_or(&id))))
}

/// Random Hermitian operator with Gaussian entries.
pub fn random_hermitian(n_qubits: usize, seed: u64) -> QOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_hermitian_with(n_qubits, &mut rng)
}

pub fn random_hermitian_with<R: rand::Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> QOperator {
    let dim = 1usize << n_qubits;
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    QOperator::from_square((&g + g.adjoint()).scale(0.5))
}

/// Random unitary: the Q factor of a complex Gaussian matrix.
pub fn random_unitary_with<R: rand::Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> QOperator {
    let dim = 1usize << n_qubits;
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    QOperator::from_square(g.qr().q())
}
