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

//! Shor factoring: modular-exponentiation register load, a measurement of
//! the second register, a Fourier transform of the first, and classical
//! period extraction by continued fractions.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::qft::{qft, QftMethod};
use crate::density::{evolve_local, from_state, measure_qubits_branch, outcome_probabilities, sample_index};
use crate::pauli::QOperator;
use crate::qstate::StateVector;
use crate::{QdmError, Result, C64};

/// Largest total register width for the state-vector methods.
pub const MAX_STATE_QUBITS: usize = 22;
/// Largest total register width for the density-matrix method.
pub const MAX_DENSITY_QUBITS: usize = 12;

/// How the quantum part of a run is simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShorMethod {
    /// Density matrix of both registers, projective measurement of register
    /// 2, circuit QFT on register 1.
    DensityQft,
    /// State vectors with the circuit QFT. With `explicit_register2` the
    /// collapsed two-register vector is kept and transformed; without it only
    /// the register-1 slice for the measured value is.
    StateVectorQft { explicit_register2: bool },
    /// Register-1 slice times the DFT matrix, no circuit.
    ClassicalDft,
}

/// One factoring attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShorRun {
    pub modulus: u64,
    pub base: u64,
    pub n1: usize,
    pub n2: usize,
    pub method: ShorMethod,
    pub seed: u64,
}

impl ShorRun {
    pub fn new(modulus: u64, base: u64, n1: usize, n2: usize, method: ShorMethod, seed: u64) -> Result<Self> {
        validate(modulus, base, n1, n2)?;
        let total = n1 + n2;
        let limit = match method {
            ShorMethod::DensityQft => MAX_DENSITY_QUBITS,
            _ => MAX_STATE_QUBITS,
        };
        if total > limit {
            return Err(QdmError::InvalidParameter(format!(
                "{total} register qubits exceed the {limit}-qubit limit of {method:?}"
            )));
        }
        Ok(ShorRun {
            modulus,
            base,
            n1,
            n2,
            method,
            seed,
        })
    }

    /// Register sizes `n2 = ceil(log2 N)`, `n1 = 2 n2`.
    pub fn with_default_registers(modulus: u64, base: u64, method: ShorMethod, seed: u64) -> Result<Self> {
        let n2 = register2_size(modulus);
        ShorRun::new(modulus, base, 2 * n2, n2, method, seed)
    }
}

/// Smallest `n` with `2^n >= N`.
pub fn register2_size(modulus: u64) -> usize {
    (64 - modulus.saturating_sub(1).leading_zeros()) as usize
}

fn validate(modulus: u64, base: u64, n1: usize, n2: usize) -> Result<()> {
    if modulus < 3 {
        return Err(QdmError::InvalidParameter(format!("modulus {modulus} too small")));
    }
    if base <= 1 || base >= modulus {
        return Err(QdmError::InvalidParameter(format!("base {base} outside 2..{modulus}")));
    }
    if gcd(base, modulus) != 1 {
        return Err(QdmError::NotCoprime(base, modulus));
    }
    if n1 < 1 {
        return Err(QdmError::InvalidParameter("register 1 needs at least one qubit".into()));
    }
    if n2 >= 63 || (1u64 << n2) < modulus {
        return Err(QdmError::InvalidParameter(format!(
            "2^{n2} cannot hold residues mod {modulus}"
        )));
    }
    Ok(())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `x^e mod N` by square-and-multiply.
pub fn mod_pow(x: u64, mut e: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut base = x as u128 % m;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// `2^{-n1/2} sum_i |i>_1 |x^i mod N>_2` on `n1 + n2` qubits.
pub fn modexp_load(x: u64, modulus: u64, n1: usize, n2: usize) -> Result<StateVector> {
    validate(modulus, x, n1, n2)?;
    if n1 + n2 > MAX_STATE_QUBITS {
        return Err(QdmError::InvalidParameter(format!("{} qubits is too many", n1 + n2)));
    }
    let amp = C64::new((0.5f64).powf(n1 as f64 / 2.0), 0.0);
    let mut v = DVector::zeros(1 << (n1 + n2));
    let mut value = 1u64;
    for i in 0..1usize << n1 {
        v[(i << n2) | value as usize] = amp;
        value = value * x % modulus;
    }
    Ok(StateVector::from_dvector(v))
}

/// Denominators of the continued-fraction convergents of `y / 2^n1`.
pub fn convergent_denominators(y: u64, n1: usize) -> Vec<u64> {
    let (mut a, mut b) = (y as u128, 1u128 << n1);
    let (mut k_prev, mut k) = (1u128, 0u128);
    let mut out = Vec::new();
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a % b);
        (k_prev, k) = (k, q * k + k_prev);
        if out.last() != Some(&(k as u64)) {
            out.push(k as u64);
        }
    }
    out
}

/// First convergent denominator `q` of `y / 2^n1` with `x^q = 1 mod N`; an
/// odd `q` failing that check gets one retry as `2q`. Periods above `2^n2`
/// are rejected.
pub fn period_from_measurement(y: u64, n1: usize, x: u64, modulus: u64, n2: usize) -> Option<u64> {
    let limit = 1u64 << n2;
    for q in convergent_denominators(y, n1) {
        if q > limit {
            break;
        }
        if mod_pow(x, q, modulus) == 1 {
            return Some(q);
        }
        if q % 2 == 1 && 2 * q <= limit && mod_pow(x, 2 * q, modulus) == 1 {
            return Some(2 * q);
        }
    }
    None
}

/// `gcd(x^{r/2} +- 1, N)` when `r` is even and `x^{r/2} != -1 mod N`.
pub fn factors_from_period(x: u64, r: u64, modulus: u64) -> Option<(u64, u64)> {
    if r % 2 == 1 {
        return None;
    }
    let half = mod_pow(x, r / 2, modulus);
    if half == modulus - 1 {
        return None;
    }
    [gcd(half + modulus - 1, modulus), gcd(half + 1, modulus)]
        .into_iter()
        .find(|&f| f > 1 && f < modulus)
        .map(|f| (f.min(modulus / f), f.max(modulus / f)))
}

/// Result of one run; `factors` is `None` when the run failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShorOutcome {
    pub run: ShorRun,
    pub register2_value: u64,
    pub register1_value: u64,
    pub period: Option<u64>,
    pub factors: Option<(u64, u64)>,
}

/// Classical post-processing of a measured register-1 value.
pub fn postprocess(y: u64, x: u64, modulus: u64, n1: usize, n2: usize) -> (Option<u64>, Option<(u64, u64)>) {
    let period = period_from_measurement(y, n1, x, modulus, n2);
    let factors = period.and_then(|r| factors_from_period(x, r, modulus));
    (period, factors)
}

/// The quantum pipeline for fixed `(N, x, n1, n2, method)`, caching the QFT
/// and each conditional register-1 distribution so that repeated seeded runs
/// share the work.
pub struct ShorSimulator {
    modulus: u64,
    base: u64,
    n1: usize,
    n2: usize,
    method: ShorMethod,
    loaded: StateVector,
    transform: QOperator,
    register2: Vec<f64>,
    conditional: BTreeMap<u64, Vec<f64>>,
}

impl ShorSimulator {
    pub fn new(modulus: u64, base: u64, n1: usize, n2: usize, method: ShorMethod) -> Result<Self> {
        ShorRun::new(modulus, base, n1, n2, method, 0)?;
        let loaded = modexp_load(base, modulus, n1, n2)?;
        let transform = match method {
            ShorMethod::ClassicalDft => qft(n1, QftMethod::DirectDft)?,
            _ => qft(n1, QftMethod::Circuit)?,
        };
        let register2 = match method {
            ShorMethod::DensityQft => outcome_probabilities(&from_state(&loaded)?, &register2_qubits(n1, n2))?,
            _ => {
                let mut p = vec![0.0; 1 << n2];
                for (idx, a) in loaded.amplitudes().iter().enumerate() {
                    p[idx & ((1 << n2) - 1)] += a.norm_sqr();
                }
                p
            }
        };
        Ok(ShorSimulator {
            modulus,
            base,
            n1,
            n2,
            method,
            loaded,
            transform,
            register2,
            conditional: BTreeMap::new(),
        })
    }

    pub fn for_run(run: &ShorRun) -> Result<Self> {
        ShorSimulator::new(run.modulus, run.base, run.n1, run.n2, run.method)
    }

    /// Born probabilities of the register-2 measurement.
    pub fn register2_distribution(&self) -> &[f64] {
        &self.register2
    }

    /// Register-1 outcome probabilities after register 2 was found in `v`
    /// and the transform was applied.
    pub fn register1_distribution(&mut self, v: u64) -> Result<Vec<f64>> {
        if let Some(p) = self.conditional.get(&v) {
            return Ok(p.clone());
        }
        let p_v = self.register2.get(v as usize).copied().unwrap_or(0.0);
        if p_v < crate::density::MIN_BRANCH_PROBABILITY {
            return Err(QdmError::ImpossibleBranch {
                outcome: v as usize,
                probability: p_v,
            });
        }
        let dist = match self.method {
            ShorMethod::DensityQft => self.density_branch(v)?,
            ShorMethod::StateVectorQft {
                explicit_register2: true,
            } => self.two_register_branch(v),
            _ => self.slice_branch(v),
        };
        self.conditional.insert(v, dist.clone());
        Ok(dist)
    }

    fn density_branch(&self, v: u64) -> Result<Vec<f64>> {
        let rho = from_state(&self.loaded)?;
        let reg1: Vec<usize> = (1..=self.n1).collect();
        let post = measure_qubits_branch(&rho, &register2_qubits(self.n1, self.n2), v as usize)?.post_state;
        let transformed = evolve_local(&post, &self.transform, &reg1)?;
        outcome_probabilities(&transformed, &reg1)
    }

    fn two_register_branch(&self, v: u64) -> Vec<f64> {
        let cols = 1usize << self.n2;
        let amps = self.loaded.amplitudes();
        let norm = self.register2[v as usize].sqrt();
        // collapse, then (F (x) I) as F times the (register 1) x (register 2) reshaping
        let collapsed = DMatrix::from_fn(1 << self.n1, cols, |i, w| {
            if w as u64 == v {
                amps[i * cols + w] / norm
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let out = self.transform.matrix() * collapsed;
        out.row_iter()
            .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    fn slice_branch(&self, v: u64) -> Vec<f64> {
        let cols = 1usize << self.n2;
        let amps = self.loaded.amplitudes();
        let norm = self.register2[v as usize].sqrt();
        let slice = DVector::from_fn(1 << self.n1, |i, _| amps[i * cols + v as usize] / norm);
        (self.transform.matrix() * slice).iter().map(|a| a.norm_sqr()).collect()
    }

    /// Samples register 2 and then register 1 from one ChaCha8 stream seeded
    /// with `seed`, and post-processes.
    pub fn run(&mut self, seed: u64) -> Result<ShorOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = sample_index(&self.register2, &mut rng) as u64;
        let dist = self.register1_distribution(v)?;
        let y = sample_index(&dist, &mut rng) as u64;
        let (period, factors) = postprocess(y, self.base, self.modulus, self.n1, self.n2);
        Ok(ShorOutcome {
            run: ShorRun {
                modulus: self.modulus,
                base: self.base,
                n1: self.n1,
                n2: self.n2,
                method: self.method,
                seed,
            },
            register2_value: v,
            register1_value: y,
            period,
            factors,
        })
    }

    /// Exact probability that one run returns factors, summed over every
    /// `(register 2, register 1)` outcome pair.
    pub fn success_probability(&mut self) -> Result<f64> {
        let mut total = 0.0;
        for v in 0..self.register2.len() as u64 {
            let p_v = self.register2[v as usize];
            if p_v < crate::density::MIN_BRANCH_PROBABILITY {
                continue;
            }
            for (y, p_y) in self.register1_distribution(v)?.into_iter().enumerate() {
                if postprocess(y as u64, self.base, self.modulus, self.n1, self.n2)
                    .1
                    .is_some()
                {
                    total += p_v * p_y;
                }
            }
        }
        Ok(total)
    }
}

fn register2_qubits(n1: usize, n2: usize) -> Vec<usize> {
    (n1 + 1..=n1 + n2).collect()
}

/// One seeded run.
pub fn shor_factor(run: &ShorRun) -> Result<ShorOutcome> {
    ShorSimulator::for_run(run)?.run(run.seed)
}

/// Runs with seeds `first_seed..first_seed + runs`, sharing the simulation.
pub fn shor_factor_runs(
    modulus: u64,
    base: u64,
    n1: usize,
    n2: usize,
    method: ShorMethod,
    first_seed: u64,
    runs: u64,
) -> Result<Vec<ShorOutcome>> {
    let mut sim = ShorSimulator::new(modulus, base, n1, n2, method)?;
    (first_seed..first_seed + runs).map(|s| sim.run(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_pow(x: u64, e: u64, m: u64) -> u64 {
        (0..e).fold(1 % m, |acc, _| acc * x % m)
    }

    /// `P(v, y) = |sum_{i : x^i = v} e^{2 pi i i y / Q}|^2 / Q^2`.
    fn joint_oracle(x: u64, m: u64, n1: usize) -> BTreeMap<(u64, u64), f64> {
        let q = 1u64 << n1;
        let mut out = BTreeMap::new();
        for v in (0..q)
            .map(|i| naive_pow(x, i, m))
            .collect::<std::collections::BTreeSet<_>>()
        {
            for y in 0..q {
                let mut s = C64::new(0.0, 0.0);
                for i in (0..q).filter(|&i| naive_pow(x, i, m) == v) {
                    s += C64::from_polar(1.0, 2.0 * PI * ((i * y) % q) as f64 / q as f64);
                }
                out.insert((v, y), s.norm_sqr() / (q * q) as f64);
            }
        }
        out
    }

    #[test]
    fn modular_arithmetic() {
        for m in [15u64, 21, 35, 63] {
            for x in 2..m {
                for e in 0..20 {
                    assert_eq!(mod_pow(x, e, m), naive_pow(x, e, m));
                }
            }
        }
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 15), 1);
        assert_eq!(register2_size(15), 4);
        assert_eq!(register2_size(16), 4);
        assert_eq!(register2_size(17), 5);
    }

    #[test]
    fn load_cycles() {
        let psi = modexp_load(7, 15, 3, 4).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
        let values: Vec<usize> = (0..4)
            .map(|i| (0..16).find(|v| psi.amplitudes()[(i << 4) | v].norm() > 0.0).unwrap())
            .collect();
        assert_eq!(values, vec![1, 7, 4, 13]);
        let psi = modexp_load(4, 15, 3, 4).unwrap();
        let values: Vec<usize> = (0..4)
            .map(|i| (0..16).find(|v| psi.amplitudes()[(i << 4) | v].norm() > 0.0).unwrap())
            .collect();
        assert_eq!(values, vec![1, 4, 1, 4]);
    }

    #[test]
    fn invalid_runs_rejected() {
        assert!(matches!(modexp_load(5, 15, 4, 4), Err(QdmError::NotCoprime(5, 15))));
        assert!(ShorRun::new(15, 7, 8, 3, ShorMethod::ClassicalDft, 0).is_err());
        assert!(ShorRun::new(15, 1, 8, 4, ShorMethod::ClassicalDft, 0).is_err());
        assert!(ShorRun::new(15, 15, 8, 4, ShorMethod::ClassicalDft, 0).is_err());
        assert!(ShorRun::new(15, 7, 10, 4, ShorMethod::DensityQft, 0).is_err());
    }

    #[test]
    fn convergents_match_fraction_expansion() {
        // 192/256 = 3/4 = [0; 1, 3]
        assert_eq!(convergent_denominators(192, 8), vec![1, 4]);
        assert_eq!(convergent_denominators(0, 8), vec![1]);
        // 85/256 = [0; 3, 85]
        assert_eq!(convergent_denominators(85, 8), vec![1, 3, 256]);
        for y in 0..256u64 {
            let ds = convergent_denominators(y, 8);
            // the last convergent is the reduced fraction itself
            assert_eq!(*ds.last().unwrap(), 256 / gcd(y, 256));
        }
    }

    #[test]
    fn period_of_four_is_two() {
        for y in [0u64, 128] {
            assert_eq!(period_from_measurement(y, 8, 4, 15, 4), Some(2));
        }
        assert_eq!(factors_from_period(4, 2, 15), Some((3, 5)));
        assert_eq!(factors_from_period(7, 4, 15), Some((3, 5)));
        // 14^1 = -1 mod 15
        assert_eq!(factors_from_period(14, 2, 15), None);
        assert_eq!(factors_from_period(7, 3, 15), None);
    }

    #[test]
    fn methods_agree_with_oracle() {
        let n1 = 6;
        let oracle = joint_oracle(7, 15, n1);
        let methods = [
            ShorMethod::ClassicalDft,
            ShorMethod::StateVectorQft {
                explicit_register2: false,
            },
            ShorMethod::StateVectorQft {
                explicit_register2: true,
            },
            ShorMethod::DensityQft,
        ];
        for method in methods {
            let mut sim = ShorSimulator::new(15, 7, n1, 4, method).unwrap();
            let reg2 = sim.register2_distribution().to_vec();
            for v in 0..16u64 {
                if reg2[v as usize] < 1e-14 {
                    assert!(!oracle.contains_key(&(v, 0)));
                    continue;
                }
                let dist = sim.register1_distribution(v).unwrap();
                for (y, p) in dist.iter().enumerate() {
                    let joint = reg2[v as usize] * p;
                    assert!((joint - oracle[&(v, y as u64)]).abs() < 1e-9, "{method:?} v={v} y={y}");
                }
            }
        }
    }

    #[test]
    fn every_success_finds_three_and_five() {
        for x in [2u64, 4, 7, 8, 11, 13] {
            let outcomes = shor_factor_runs(15, x, 8, 4, ShorMethod::ClassicalDft, 0, 50).unwrap();
            for o in &outcomes {
                if let Some(f) = o.factors {
                    assert_eq!(f, (3, 5));
                }
            }
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let run = ShorRun::new(15, 7, 6, 4, ShorMethod::ClassicalDft, 11).unwrap();
        assert_eq!(shor_factor(&run).unwrap(), shor_factor(&run).unwrap());
    }
}
