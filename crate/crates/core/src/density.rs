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

//! Density matrices and their functionals.
//!
//! Two independent partial traces are provided. [`ptrace`] expands the
//! operator in Pauli strings, keeps the terms that are the identity on every
//! traced qubit, drops those slots and multiplies by 2 per traced qubit.
//! [`ptrace_direct`] sums matrix elements over the traced indices. They must
//! agree; the second exists to check the first.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigenvalues, sqrt_psd};
use crate::pauli::{self, embed, PauliIndex, QOperator, RawOperator};
use crate::qstate::{BasisKind, StateVector};
use crate::{QdmError, Result, C64};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated before a matrix stops counting as PSD.
pub const PSD_TOL: f64 = 1e-10;
/// Probability below which a forced measurement branch is rejected.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-14;

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RawDensity", try_from = "RawDensity")]
pub struct DensityMatrix {
    op: QOperator,
}

#[derive(Serialize, Deserialize)]
struct RawDensity {
    n_qubits: usize,
    dimension: usize,
    /// Row-major.
    entries: Vec<C64>,
}

impl From<DensityMatrix> for RawDensity {
    fn from(rho: DensityMatrix) -> Self {
        let n_qubits = rho.n_qubits();
        let raw = RawOperator::from(rho.op);
        RawDensity {
            n_qubits,
            dimension: raw.dimension,
            entries: raw.entries,
        }
    }
}

impl TryFrom<RawDensity> for DensityMatrix {
    type Error = QdmError;

    fn try_from(raw: RawDensity) -> Result<Self> {
        let op = QOperator::try_from(RawOperator {
            dimension: raw.dimension,
            entries: raw.entries,
        })?;
        if op.n_qubits() != raw.n_qubits {
            return Err(QdmError::DimensionMismatch {
                expected: 1 << raw.n_qubits,
                found: op.dim(),
            });
        }
        DensityMatrix::new(op)
    }
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(op: QOperator) -> Result<Self> {
        let rho = DensityMatrix { op };
        rho.check_invariants()?;
        Ok(rho)
    }

    /// Wraps an operator that is a density matrix by construction.
    pub(crate) fn from_op_unchecked(op: QOperator) -> Self {
        DensityMatrix { op }
    }

    /// Maximally mixed state `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let scale = 1.0 / (1usize << n_qubits) as f64;
        DensityMatrix {
            op: QOperator::identity(n_qubits).scale_real(scale),
        }
    }

    /// Errors if any density-matrix invariant is violated.
    pub fn check_invariants(&self) -> Result<()> {
        let herm = self.op.hermiticity_deviation();
        if herm > HERMITIAN_TOL {
            return Err(QdmError::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = self.op.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(QdmError::InvalidDensity(format!("trace {tr} != 1")));
        }
        let min_eig = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL {
            return Err(QdmError::InvalidDensity(format!("negative eigenvalue {min_eig:e}")));
        }
        let purity = self.purity();
        if purity > 1.0 + TRACE_TOL {
            return Err(QdmError::InvalidDensity(format!("purity {purity} > 1")));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.op.n_qubits()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &QOperator {
        &self.op
    }

    pub fn into_operator(self) -> QOperator {
        self.op
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.op.entry(row, col)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values = hermitian_eigenvalues(self.op.matrix());
        values.sort_by(f64::total_cmp);
        values
    }

    /// `Tr[rho^2]`, computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.op.matrix().iter().map(|x| x.norm_sqr()).sum()
    }

    /// Von Neumann entropy `-Tr[rho log2 rho]` in bits.
    pub fn entropy(&self) -> f64 {
        entropy(self)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.op.max_abs_diff(&other.op)
    }

    /// Reduced state on the qubits left after tracing out `traced`.
    pub fn partial_trace(&self, traced: &[usize]) -> Result<DensityMatrix> {
        Ok(DensityMatrix::from_op_unchecked(ptrace(traced, &self.op)?))
    }

    /// Reduced state on `keep` (in register order).
    pub fn reduced_to(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_qubits();
        check_labels(n, keep)?;
        let traced: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
        if traced.is_empty() {
            return Ok(self.clone());
        }
        self.partial_trace(&traced)
    }

    /// `p_k` for outcome `k` of a projective measurement, `Tr[P rho P] = Tr[P rho]`.
    fn branch_probability(&self, p: &QOperator) -> f64 {
        (p * &self.op).trace().re
    }
}

/// Pure state `|psi><psi|`.
pub fn from_state(psi: &StateVector) -> Result<DensityMatrix> {
    psi.check_normalized(1e-10)?;
    Ok(DensityMatrix::from_op_unchecked(QOperator::outer(psi, psi)?))
}

/// `U rho U^dag`. `u` must be unitary within `1e-10`.
pub fn evolve(rho: &DensityMatrix, u: &QOperator) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(QdmError::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_deviation();
    if deviation >= 1e-10 {
        return Err(QdmError::NotUnitary { deviation });
    }
    let out = u.matrix() * rho.op.matrix() * u.matrix().adjoint();
    Ok(DensityMatrix::from_op_unchecked(QOperator::from_square(out)))
}

/// `U rho U^dag` where `u` acts on `qubits` (in that order, first listed most
/// significant) and the identity elsewhere. Costs `O(4^n 2^k)` instead of the
/// `O(8^n)` of building the full operator.
pub fn evolve_local(rho: &DensityMatrix, u: &QOperator, qubits: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    check_labels(n, qubits)?;
    if u.n_qubits() != qubits.len() {
        return Err(QdmError::DimensionMismatch {
            expected: 1 << qubits.len(),
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_deviation();
    if deviation >= 1e-10 {
        return Err(QdmError::NotUnitary { deviation });
    }
    let left = apply_left_local(rho.op.matrix(), u.matrix(), n, qubits);
    // (U rho) U^dag = (U (U rho)^dag)^dag
    let out = apply_left_local(&left.adjoint(), u.matrix(), n, qubits).adjoint();
    Ok(DensityMatrix::from_op_unchecked(QOperator::from_square(out)))
}

/// `(U (x) I) M` with `U` acting on the given qubit labels.
pub(crate) fn apply_left_local(m: &DMatrix<C64>, u: &DMatrix<C64>, n_qubits: usize, qubits: &[usize]) -> DMatrix<C64> {
    let k = qubits.len();
    let sub_dim = 1usize << k;
    let masks: Vec<usize> = qubits.iter().map(|&q| 1usize << (n_qubits - q)).collect();
    let target_mask: usize = masks.iter().sum();
    // full index of sub-index s on top of a base with target bits cleared
    let scatter = |base: usize, s: usize| -> usize {
        masks.iter().enumerate().fold(
            base,
            |acc, (j, &mask)| {
                if (s >> (k - 1 - j)) & 1 == 1 {
                    acc | mask
                } else {
                    acc
                }
            },
        )
    };
    let dim = m.nrows();
    let mut out = DMatrix::zeros(dim, m.ncols());
    let mut gathered = vec![C64::new(0.0, 0.0); sub_dim];
    let bases: Vec<usize> = (0..dim).filter(|x| x & target_mask == 0).collect();
    let rows: Vec<Vec<usize>> = bases
        .iter()
        .map(|&b| (0..sub_dim).map(|s| scatter(b, s)).collect())
        .collect();
    for col in 0..m.ncols() {
        for idx in &rows {
            for (s, &row) in idx.iter().enumerate() {
                gathered[s] = m[(row, col)];
            }
            for (r, &row) in idx.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (s, g) in gathered.iter().enumerate() {
                    acc += u[(r, s)] * g;
                }
                out[(row, col)] = acc;
            }
        }
    }
    out
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Von Neumann entropy in bits, `0 log 0 = 0`.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .map(|l| l.max(0.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// Uhlmann fidelity `Tr sqrt(sqrt(sigma) rho sqrt(sigma))`, with `sigma = rho2`.
/// Reduces to `|<psi|phi>|` for pure states.
///
/// Evaluated as the trace norm `||sqrt(rho) sqrt(sigma)||_1`, the sum of
/// singular values. Taking square roots of the eigenvalues of
/// `sqrt(sigma) rho sqrt(sigma)` instead turns `1e-17` round-off in its null
/// space into `1e-9` errors.
pub fn fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(QdmError::DimensionMismatch {
            expected: rho1.dim(),
            found: rho2.dim(),
        });
    }
    let product = sqrt_psd(rho1.op.matrix()) * sqrt_psd(rho2.op.matrix());
    Ok(product.singular_values().iter().sum())
}

/// Fidelity of `rho` against a pure target, `sqrt(<psi|rho|psi>)`.
pub fn fidelity_pure(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(QdmError::DimensionMismatch {
            expected: rho.dim(),
            found: psi.dim(),
        });
    }
    let v = psi.as_dvector();
    let overlap = v.dotc(&(rho.op.matrix() * v)).re;
    Ok(overlap.max(0.0).sqrt())
}

/// Labels must be in `1..=n` and distinct.
pub(crate) fn check_labels(n_qubits: usize, labels: &[usize]) -> Result<()> {
    let mut seen = vec![false; n_qubits + 1];
    for &q in labels {
        if q == 0 || q > n_qubits {
            return Err(QdmError::QubitOutOfRange { qubit: q, n_qubits });
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(QdmError::DuplicateQubit(q));
        }
    }
    Ok(())
}

fn check_trace_set(n_qubits: usize, traced: &[usize]) -> Result<()> {
    if traced.is_empty() {
        return Err(QdmError::InvalidParameter("no qubits to trace out".into()));
    }
    check_labels(n_qubits, traced)
}

/// Partial trace by Pauli expansion. Surviving qubits keep their relative
/// order and are renumbered `1..=n-|traced|`. Tracing every qubit yields the
/// `1 x 1` total trace.
pub fn ptrace(traced: &[usize], op: &QOperator) -> Result<QOperator> {
    let n = op.n_qubits();
    check_trace_set(n, traced)?;
    let kept: Vec<usize> = (1..=n).filter(|q| !traced.contains(q)).collect();
    let m = kept.len();
    // each surviving coefficient picks up Tr[sigma_0] = 2 per traced qubit
    // on top of the 1/2^n normalization of C_a
    let factor = (1usize << traced.len()) as f64 / op.dim() as f64;
    let terms = (0..1usize << (2 * m)).map(|k| {
        let reduced = PauliIndex::from_ordinal(m, k);
        let mut full = vec![0u8; n];
        for (slot, &q) in kept.iter().enumerate() {
            full[q - 1] = reduced.components()[slot];
        }
        let full = PauliIndex::new(full).expect("components copied from a valid index");
        let coefficient = pauli::pauli_trace(op, &full).expect("index length matches operator") * factor;
        (reduced, coefficient)
    });
    let terms: Vec<_> = terms.collect();
    Ok(pauli::reconstruct(m, terms.into_iter()))
}

/// Partial trace by direct summation over traced indices.
pub fn ptrace_direct(traced: &[usize], op: &QOperator) -> Result<QOperator> {
    let n = op.n_qubits();
    check_trace_set(n, traced)?;
    let kept: Vec<usize> = (1..=n).filter(|q| !traced.contains(q)).collect();
    let place = |labels: &[usize], value: usize| -> usize {
        let k = labels.len();
        labels
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &q)| acc | (((value >> (k - 1 - j)) & 1) << (n - q)))
    };
    let kept_dim = 1usize << kept.len();
    let traced_dim = 1usize << traced.len();
    let kept_idx: Vec<usize> = (0..kept_dim).map(|v| place(&kept, v)).collect();
    let traced_idx: Vec<usize> = (0..traced_dim).map(|v| place(traced, v)).collect();
    let m = op.matrix();
    let out = DMatrix::from_fn(kept_dim, kept_dim, |r, c| {
        traced_idx.iter().map(|&t| m[(kept_idx[r] | t, kept_idx[c] | t)]).sum()
    });
    Ok(QOperator::from_square(out))
}

fn axis_expectation(rho: &DensityMatrix, slots: &[(usize, u8)]) -> f64 {
    let mut a = vec![0u8; rho.n_qubits()];
    for &(q, i) in slots {
        a[q - 1] = i;
    }
    let a = PauliIndex::new(a).expect("axes in 1..=3");
    pauli::pauli_trace(&rho.op, &a).expect("index length matches").re
}

/// Bloch vector `P_i = Tr[rho sigma_i^(qubit)]`.
pub fn polarization(rho: &DensityMatrix, qubit: usize) -> Result<[f64; 3]> {
    check_labels(rho.n_qubits(), &[qubit])?;
    Ok([1u8, 2, 3].map(|i| axis_expectation(rho, &[(qubit, i)])))
}

/// Spin correlation tensor `T_ij = Tr[rho sigma_i^(q1) sigma_j^(q2)]`.
pub fn correlation_tensor(rho: &DensityMatrix, q1: usize, q2: usize) -> Result<[[f64; 3]; 3]> {
    check_labels(rho.n_qubits(), &[q1, q2])?;
    Ok([1u8, 2, 3].map(|i| [1u8, 2, 3].map(|j| axis_expectation(rho, &[(q1, i), (q2, j)]))))
}

/// Every single-qubit Bloch vector and every pairwise correlation tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polarization {
    /// `vectors[k]` belongs to qubit `k + 1`.
    pub vectors: Vec<[f64; 3]>,
    /// Keyed by `(q1, q2)` with `q1 < q2`.
    pub tensors: BTreeMap<(usize, usize), [[f64; 3]; 3]>,
}

impl Polarization {
    pub fn of(rho: &DensityMatrix) -> Self {
        let n = rho.n_qubits();
        let vectors = (1..=n).map(|q| polarization(rho, q).expect("label in range")).collect();
        let mut tensors = BTreeMap::new();
        for q1 in 1..=n {
            for q2 in q1 + 1..=n {
                tensors.insert((q1, q2), correlation_tensor(rho, q1, q2).expect("labels in range"));
            }
        }
        Polarization { vectors, tensors }
    }
}

/// Result of a projective measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub outcome: usize,
    pub probability: f64,
    pub post_state: DensityMatrix,
}

pub(crate) fn check_projectors(dim: usize, projectors: &[QOperator]) -> Result<()> {
    if projectors.is_empty() {
        return Err(QdmError::IncompleteProjectors {
            deviation: f64::INFINITY,
        });
    }
    let mut sum = QOperator::zeros(0);
    for (k, p) in projectors.iter().enumerate() {
        if p.dim() != dim {
            return Err(QdmError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        sum = if k == 0 { p.clone() } else { &sum + p };
    }
    let deviation = sum.max_abs_diff(&QOperator::identity(sum.n_qubits()));
    if deviation > 1e-10 {
        return Err(QdmError::IncompleteProjectors { deviation });
    }
    // Hermitian idempotents summing to the identity are mutually orthogonal,
    // so k checks replace the k^2/2 pairwise products.
    for p in projectors {
        let deviation = (p * p).max_abs_diff(p).max(p.hermiticity_deviation());
        if deviation > 1e-10 {
            return Err(QdmError::IncompleteProjectors { deviation });
        }
    }
    Ok(())
}

fn collapse(rho: &DensityMatrix, p: &QOperator, probability: f64) -> DensityMatrix {
    let post = (&(p * &rho.op) * p).scale_real(1.0 / probability);
    DensityMatrix::from_op_unchecked(post)
}

/// Samples an outcome with probability `Tr[P_k rho P_k]` and collapses the
/// state. Deterministic in `seed`.
pub fn measure(rho: &DensityMatrix, projectors: &[QOperator], seed: u64) -> Result<MeasurementRecord> {
    check_projectors(rho.dim(), projectors)?;
    let probabilities: Vec<f64> = projectors.iter().map(|p| rho.branch_probability(p)).collect();
    let outcome = sample_index(&probabilities, &mut ChaCha8Rng::seed_from_u64(seed));
    let probability = probabilities[outcome];
    Ok(MeasurementRecord {
        outcome,
        probability,
        post_state: collapse(rho, &projectors[outcome], probability),
    })
}

/// Forced outcome `k`, for enumerating every branch.
pub fn measure_branch(rho: &DensityMatrix, projectors: &[QOperator], k: usize) -> Result<MeasurementRecord> {
    check_projectors(rho.dim(), projectors)?;
    measure_branch_checked(rho, projectors, k)
}

/// [`measure_branch`] for a projector set already validated against `rho`.
pub(crate) fn measure_branch_checked(
    rho: &DensityMatrix,
    projectors: &[QOperator],
    k: usize,
) -> Result<MeasurementRecord> {
    let p = projectors
        .get(k)
        .ok_or_else(|| QdmError::InvalidParameter(format!("outcome {k} outside 0..{}", projectors.len())))?;
    let probability = rho.branch_probability(p);
    if probability < MIN_BRANCH_PROBABILITY {
        return Err(QdmError::ImpossibleBranch {
            outcome: k,
            probability,
        });
    }
    Ok(MeasurementRecord {
        outcome: k,
        probability,
        post_state: collapse(rho, p, probability),
    })
}

/// Draws from a discrete distribution; tail mass from round-off goes to the
/// last outcome with nonzero weight.
pub(crate) fn sample_index<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let total: f64 = probabilities.iter().map(|p| p.max(0.0)).sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (k, &p) in probabilities.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = k;
        if target < acc {
            return k;
        }
    }
    last
}

/// Projectors for measuring `qubits` one by one in the given bases. Outcome
/// `k` has the bit of `qubits[0]` most significant.
pub fn basis_projectors(n_qubits: usize, qubits: &[(usize, BasisKind)]) -> Result<Vec<QOperator>> {
    let labels: Vec<usize> = qubits.iter().map(|&(q, _)| q).collect();
    check_labels(n_qubits, &labels)?;
    let k = qubits.len();
    (0..1usize << k)
        .map(|outcome| {
            let factors: Vec<QOperator> = qubits
                .iter()
                .enumerate()
                .map(|(j, &(_, basis))| pauli::projector(((outcome >> (k - 1 - j)) & 1) as u8, basis))
                .collect();
            let placements: Vec<(usize, &QOperator)> = labels.iter().copied().zip(factors.iter()).collect();
            embed(n_qubits, &placements)
        })
        .collect()
}

/// Computational-basis projectors on `qubits`.
pub fn computational_projectors(n_qubits: usize, qubits: &[usize]) -> Result<Vec<QOperator>> {
    let with_basis: Vec<(usize, BasisKind)> = qubits.iter().map(|&q| (q, BasisKind::Computational)).collect();
    basis_projectors(n_qubits, &with_basis)
}

/// Probability of each computational outcome on `qubits` (first listed most
/// significant), read off the diagonal.
pub fn outcome_probabilities(rho: &DensityMatrix, qubits: &[usize]) -> Result<Vec<f64>> {
    let n = rho.n_qubits();
    check_labels(n, qubits)?;
    let k = qubits.len();
    let mut probs = vec![0.0; 1 << k];
    for x in 0..rho.dim() {
        probs[outcome_of(x, n, qubits)] += rho.entry(x, x).re;
    }
    Ok(probs)
}

fn outcome_of(x: usize, n: usize, qubits: &[usize]) -> usize {
    qubits.iter().fold(0usize, |acc, &q| (acc << 1) | ((x >> (n - q)) & 1))
}

/// Computational-basis measurement of `qubits` with a forced outcome. The
/// projector is diagonal, so the collapse is a row/column mask.
pub fn measure_qubits_branch(rho: &DensityMatrix, qubits: &[usize], outcome: usize) -> Result<MeasurementRecord> {
    let n = rho.n_qubits();
    check_labels(n, qubits)?;
    if outcome >= 1 << qubits.len() {
        return Err(QdmError::InvalidParameter(format!(
            "outcome {outcome} needs more than {} bits",
            qubits.len()
        )));
    }
    let keep: Vec<bool> = (0..rho.dim()).map(|x| outcome_of(x, n, qubits) == outcome).collect();
    let probability: f64 = (0..rho.dim()).filter(|&x| keep[x]).map(|x| rho.entry(x, x).re).sum();
    if probability < MIN_BRANCH_PROBABILITY {
        return Err(QdmError::ImpossibleBranch { outcome, probability });
    }
    let m = rho.op.matrix();
    let post = DMatrix::from_fn(rho.dim(), rho.dim(), |r, c| {
        if keep[r] && keep[c] {
            m[(r, c)] / probability
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(MeasurementRecord {
        outcome,
        probability,
        post_state: DensityMatrix::from_op_unchecked(QOperator::from_square(post)),
    })
}

/// Sampled computational-basis measurement of `qubits`.
pub fn measure_qubits(rho: &DensityMatrix, qubits: &[usize], seed: u64) -> Result<MeasurementRecord> {
    let probs = outcome_probabilities(rho, qubits)?;
    let outcome = sample_index(&probs, &mut ChaCha8Rng::seed_from_u64(seed));
    measure_qubits_branch(rho, qubits, outcome)
}

/// Random mixed state: `G G^dag / Tr` for a complex Gaussian `G`.
pub fn random_density_with<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> DensityMatrix {
    let g = pauli::random_hermitian_with(n_qubits, rng);
    let h = pauli::random_unitary_with(n_qubits, rng);
    let a = &g * &h;
    let m = a.matrix() * a.matrix().adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_op_unchecked(QOperator::from_square(m.map(|x| x / tr)))
}
