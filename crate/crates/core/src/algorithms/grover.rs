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

//! Grover search with an arbitrary set of marked items.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::pauli::QOperator;
use crate::states::uniform;
use crate::{QdmError, Result, C64};

/// Search register size, marked items and iteration count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverProblem {
    pub n_register: usize,
    pub marked: BTreeSet<usize>,
    pub iterations: usize,
}

impl GroverProblem {
    /// With `iterations = None` the count defaults to [`default_iterations`].
    pub fn new(n_register: usize, marked: impl IntoIterator<Item = usize>, iterations: Option<usize>) -> Result<Self> {
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        validate(n_register, &marked)?;
        let iterations = iterations.unwrap_or_else(|| default_iterations(n_register, marked.len()));
        Ok(GroverProblem {
            n_register,
            marked,
            iterations,
        })
    }

    pub fn database_size(&self) -> usize {
        1 << self.n_register
    }
}

fn validate(n: usize, marked: &BTreeSet<usize>) -> Result<()> {
    if n < 1 {
        return Err(QdmError::InvalidParameter("register needs at least one qubit".into()));
    }
    if marked.is_empty() {
        return Err(QdmError::InvalidParameter("no marked items".into()));
    }
    let size = 1usize << n;
    if let Some(&x) = marked.iter().find(|&&x| x >= size) {
        return Err(QdmError::InvalidParameter(format!("marked item {x} outside 0..{size}")));
    }
    if marked.len() >= size {
        return Err(QdmError::InvalidParameter("every item is marked".into()));
    }
    Ok(())
}

/// `round(pi / (4 theta) - 1/2)` with `sin theta = sqrt(M/N)`, the count
/// that brings `(2k+1) theta` closest to `pi/2`. For `M << N` this is the
/// familiar `round(pi/4 sqrt(N/M))`; the two differ only when `M/N` is
/// large, e.g. `N = 8, M = 2` where the small-angle form overshoots to 2
/// iterations and success 1/4.
pub fn default_iterations(n_register: usize, n_marked: usize) -> usize {
    let theta = (n_marked as f64 / (1usize << n_register) as f64).sqrt().asin();
    (PI / (4.0 * theta) - 0.5).round().max(0.0) as usize
}

/// `(n+1)`-qubit oracle `|x>|y> -> |x>|y xor f(x)>`, ancilla last.
pub fn grover_oracle(n: usize, marked: &BTreeSet<usize>) -> Result<QOperator> {
    validate(n, marked)?;
    let dim = 1usize << (n + 1);
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..1usize << n {
        let f = usize::from(marked.contains(&x));
        for y in 0..2 {
            m[((x << 1) | (y ^ f), (x << 1) | y)] = C64::new(1.0, 0.0);
        }
    }
    QOperator::from_matrix(m)
}

/// `n`-qubit phase oracle `|x> -> (-1)^f(x) |x>`: the action of
/// [`grover_oracle`] with the ancilla held in `|->`.
pub fn grover_phase_oracle(n: usize, marked: &BTreeSet<usize>) -> Result<QOperator> {
    validate(n, marked)?;
    let dim = 1usize << n;
    let diag = nalgebra::DVector::from_fn(dim, |x, _| C64::new(if marked.contains(&x) { -1.0 } else { 1.0 }, 0.0));
    QOperator::from_matrix(DMatrix::from_diagonal(&diag))
}

/// Inversion about the mean, `2|s><s| - I` with `|s>` uniform.
pub fn grover_diffusion(n: usize) -> Result<QOperator> {
    let s = uniform(n)?;
    let reflect = QOperator::outer(&s, &s)?.scale_real(2.0);
    Ok(&reflect - &QOperator::identity(n))
}

/// Outcome distribution after the search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroverResult {
    pub iterations: usize,
    pub probabilities: Vec<f64>,
    pub success_probability: f64,
    pub most_likely: usize,
}

/// Starts from the uniform state and applies `diffusion * oracle`
/// `problem.iterations` times.
pub fn grover_search(problem: &GroverProblem) -> Result<GroverResult> {
    let n = problem.n_register;
    let step = &grover_diffusion(n)? * &grover_phase_oracle(n, &problem.marked)?;
    let mut state = uniform(n)?;
    for _ in 0..problem.iterations {
        state = step.apply(&state)?;
    }
    let probabilities = state.probabilities();
    let success_probability = problem.marked.iter().map(|&x| probabilities[x]).sum();
    let most_likely = probabilities
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap_or(0);
    Ok(GroverResult {
        iterations: problem.iterations,
        probabilities,
        success_probability,
        most_likely,
    })
}
