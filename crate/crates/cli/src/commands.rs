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

//! One function per subcommand. Each returns the `params` and `results`
//! parts of the output document.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qdm_core::algorithms::cluster::{cluster_cnot, cluster_cnot_all, cluster_transport, TransportOutcome};
use qdm_core::algorithms::grover::{grover_search, GroverProblem};
use qdm_core::algorithms::shor::{register2_size, ShorMethod, ShorRun, ShorSimulator};
use qdm_core::algorithms::teleport::{
    teleport_bell, teleport_bell_all, teleport_one, teleport_one_all, teleport_two, teleport_two_all,
};
use qdm_core::algorithms::{Branch, BranchOutcome, PauliCorrection};
use qdm_core::density::{self, from_state, ptrace, ptrace_direct};
use qdm_core::pauli::random_hermitian;
use qdm_core::qstate::random_state;
use qdm_core::states;
use qdm_core::{DensityMatrix, StateVector};

/// Fidelity below `1 - FIDELITY_TOL` counts as a protocol failure.
const FIDELITY_TOL: f64 = 1e-10;
const PTRACE_TOL: f64 = 1e-10;

pub struct Outcome {
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    /// Set when the algorithm ran but did not succeed.
    pub failure: Option<String>,
}

#[derive(Debug)]
pub struct UsageError(pub String);

fn usage(e: impl Display) -> UsageError {
    UsageError(e.to_string())
}

fn ok(command: &'static str, params: impl Serialize, results: Value) -> Result<Outcome, UsageError> {
    Ok(Outcome {
        command,
        params: serde_json::to_value(params).map_err(usage)?,
        results,
        failure: None,
    })
}

fn bit() -> clap::builder::RangedI64ValueParser<u8> {
    clap::value_parser!(u8).range(0..=1)
}

/// Outcome bits given on the command line as a string such as `0110`.
#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct Bits(Vec<u8>);

fn parse_bits(s: &str) -> Result<Bits, String> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(format!("'{other}' is not a bit")),
        })
        .collect::<Result<_, _>>()
        .map(Bits)
}

fn entropy_of(rho: &DensityMatrix, keep: &[usize]) -> Result<f64, UsageError> {
    Ok(density::entropy(&rho.reduced_to(keep).map_err(usage)?))
}

#[derive(Debug, Args, Serialize)]
pub struct BellArgs {
    #[arg(long, default_value_t = 0, value_parser = bit())]
    a: u8,
    #[arg(long, default_value_t = 0, value_parser = bit())]
    b: u8,
}

pub fn bell(args: &BellArgs) -> Result<Outcome, UsageError> {
    let psi = states::bell(args.a, args.b);
    let rho = from_state(&psi).map_err(usage)?;
    let results = json!({
        "state": psi,
        "entropy": density::entropy(&rho),
        "reduced_entropy": [entropy_of(&rho, &[1])?, entropy_of(&rho, &[2])?],
        "polarization": [
            density::polarization(&rho, 1).map_err(usage)?,
            density::polarization(&rho, 2).map_err(usage)?,
        ],
        "correlation_tensor": density::correlation_tensor(&rho, 1, 2).map_err(usage)?,
    });
    ok("bell", args, results)
}

#[derive(Debug, Args, Serialize)]
pub struct GhzArgs {
    #[arg(long, default_value_t = 0, value_parser = bit())]
    a: u8,
    #[arg(long, default_value_t = 0, value_parser = bit())]
    b: u8,
    #[arg(long, default_value_t = 0, value_parser = bit())]
    c: u8,
}

pub fn ghz(args: &GhzArgs) -> Result<Outcome, UsageError> {
    let psi = states::ghz(args.a, args.b, args.c);
    let rho = from_state(&psi).map_err(usage)?;
    let mut reduced = BTreeMap::new();
    for keep in [vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]] {
        let key = keep.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        reduced.insert(key, entropy_of(&rho, &keep)?);
    }
    let results = json!({
        "state": psi,
        "entropy": density::entropy(&rho),
        "reduced_entropy": reduced,
    });
    ok("ghz", args, results)
}

#[derive(Debug, Args, Serialize)]
pub struct WernerArgs {
    /// Weight of the Bell component, in [0, 1].
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 0, value_parser = bit())]
    a: u8,
    #[arg(long, default_value_t = 0, value_parser = bit())]
    b: u8,
}

pub fn werner(args: &WernerArgs) -> Result<Outcome, UsageError> {
    let rho = states::werner(args.lambda, args.a, args.b).map_err(usage)?;
    let results = json!({
        "entropy": density::entropy(&rho),
        "purity": rho.purity(),
        "eigenvalues": rho.eigenvalues(),
        "reduced_entropy": [entropy_of(&rho, &[1])?, entropy_of(&rho, &[2])?],
        "density": rho,
    });
    ok("werner", args, results)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TeleportVariant {
    /// One qubit over a Bell pair.
    One,
    /// A Bell state over a GHZ resource.
    Bell,
    /// Two qubits over two Bell pairs.
    Two,
}

#[derive(Debug, Args, Serialize)]
pub struct TeleportArgs {
    #[arg(value_enum)]
    variant: TeleportVariant,
    /// Force Alice's outcome bits, e.g. `01`; all branches when omitted.
    #[arg(long, value_parser = parse_bits)]
    branch: Option<Bits>,
    /// Bell labels for the `bell` variant.
    #[arg(long, default_value_t = 0, value_parser = bit())]
    a: u8,
    #[arg(long, default_value_t = 0, value_parser = bit())]
    b: u8,
}

fn correction_label(c: &PauliCorrection) -> &'static str {
    match (c.z, c.x) {
        (false, false) => "I",
        (false, true) => "X",
        (true, false) => "Z",
        (true, true) => "ZX",
    }
}

fn branch_json(b: &BranchOutcome) -> Value {
    json!({
        "bits": b.measured_bits,
        "probability": b.branch_probability,
        "fidelity": b.fidelity,
        "corrections": b.corrections.iter().map(correction_label).collect::<Vec<_>>(),
    })
}

fn branches_outcome(
    command: &'static str,
    params: impl Serialize,
    input: Value,
    branches: &[BranchOutcome],
) -> Result<Outcome, UsageError> {
    let total: f64 = branches.iter().map(|b| b.branch_probability).sum();
    let worst = branches.iter().map(|b| b.fidelity).fold(1.0, f64::min);
    let mut outcome = ok(
        command,
        params,
        json!({
            "input": input,
            "branches": branches.iter().map(branch_json).collect::<Vec<_>>(),
            "total_probability": total,
            "min_fidelity": worst,
        }),
    )?;
    if worst < 1.0 - FIDELITY_TOL {
        outcome.failure = Some(format!("corrected fidelity {worst} below 1"));
    }
    Ok(outcome)
}

pub fn teleport(args: &TeleportArgs, seed: u64) -> Result<Outcome, UsageError> {
    let forced = args.branch.clone().map(|b| Branch::Forced(b.0));
    let (input, branches) = match args.variant {
        TeleportVariant::One => {
            let psi = random_state(1, seed);
            let out = match &forced {
                Some(b) => vec![teleport_one(&psi, b).map_err(usage)?],
                None => teleport_one_all(&psi).map_err(usage)?,
            };
            (json!(psi), out)
        }
        TeleportVariant::Bell => {
            let out = match &forced {
                Some(b) => vec![teleport_bell(args.a, args.b, b).map_err(usage)?],
                None => teleport_bell_all(args.a, args.b).map_err(usage)?,
            };
            (json!(states::bell(args.a, args.b)), out)
        }
        TeleportVariant::Two => {
            let psi = random_state(2, seed);
            let out = match &forced {
                Some(b) => vec![teleport_two(&psi, b).map_err(usage)?],
                None => teleport_two_all(&psi).map_err(usage)?,
            };
            (json!(psi), out)
        }
    };
    branches_outcome("teleport", args, input, &branches)
}

#[derive(Debug, Args, Serialize)]
pub struct GroverArgs {
    /// Register size in qubits.
    #[arg(long)]
    n: usize,
    /// Marked items, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    marked: Vec<usize>,
    /// Grover iterations; defaults to the optimal count.
    #[arg(long)]
    iters: Option<usize>,
}

pub fn grover(args: &GroverArgs) -> Result<Outcome, UsageError> {
    let problem = GroverProblem::new(args.n, args.marked.iter().copied(), args.iters).map_err(usage)?;
    let result = grover_search(&problem).map_err(usage)?;
    let results = json!({
        "iterations": result.iterations,
        "success_probability": result.success_probability,
        "most_likely": result.most_likely,
        "probabilities": result.probabilities,
    });
    ok("grover", args, results)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShorMethodArg {
    /// Density matrix with the circuit QFT.
    Density,
    /// Register-1 slice with the circuit QFT.
    Statevector,
    /// Both registers kept as a state vector, circuit QFT.
    StatevectorExplicit,
    /// Register-1 slice times the DFT matrix.
    Dft,
}

impl From<ShorMethodArg> for ShorMethod {
    fn from(m: ShorMethodArg) -> Self {
        match m {
            ShorMethodArg::Density => ShorMethod::DensityQft,
            ShorMethodArg::Statevector => ShorMethod::StateVectorQft {
                explicit_register2: false,
            },
            ShorMethodArg::StatevectorExplicit => ShorMethod::StateVectorQft {
                explicit_register2: true,
            },
            ShorMethodArg::Dft => ShorMethod::ClassicalDft,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ShorArgs {
    /// Number to factor.
    #[arg(long = "N", alias = "modulus")]
    modulus: u64,
    /// Base coprime to N.
    #[arg(long)]
    x: u64,
    #[arg(long, value_enum, default_value_t = ShorMethodArg::Dft)]
    method: ShorMethodArg,
    /// Runs use seeds `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1)]
    runs: u64,
    /// Register-1 size; defaults to twice the register-2 size.
    #[arg(long)]
    n1: Option<usize>,
    /// Register-2 size; defaults to ceil(log2 N).
    #[arg(long)]
    n2: Option<usize>,
}

pub fn shor(args: &ShorArgs, seed: u64) -> Result<Outcome, UsageError> {
    let n2 = args.n2.unwrap_or_else(|| register2_size(args.modulus));
    let n1 = args.n1.unwrap_or(2 * n2);
    let method = ShorMethod::from(args.method);
    ShorRun::new(args.modulus, args.x, n1, n2, method, seed).map_err(usage)?;
    let mut sim = ShorSimulator::new(args.modulus, args.x, n1, n2, method).map_err(usage)?;
    let mut runs = Vec::new();
    let mut factors = None;
    for k in 0..args.runs {
        let o = sim.run(seed.wrapping_add(k)).map_err(usage)?;
        factors = factors.or(o.factors);
        runs.push(json!({
            "seed": o.run.seed,
            "register2": o.register2_value,
            "register1": o.register1_value,
            "period": o.period,
            "factors": o.factors,
        }));
    }
    let successes = runs.iter().filter(|r| !r["factors"].is_null()).count();
    let results = json!({
        "n1": n1,
        "n2": n2,
        "runs": runs,
        "successes": successes,
        "success_fraction": successes as f64 / args.runs.max(1) as f64,
        "factors": factors,
    });
    let mut outcome = ok("shor", args, results)?;
    if factors.is_none() {
        outcome.failure = Some(format!("no run factored {}", args.modulus));
    }
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusterKind {
    /// One-qubit transport along a two-qubit cluster.
    Transport,
    /// CNOT on a four-qubit cluster.
    Cnot,
}

#[derive(Debug, Args, Serialize)]
pub struct ClusterArgs {
    #[arg(value_enum)]
    kind: ClusterKind,
    /// Force the measured bits; all branches when omitted.
    #[arg(long, value_parser = parse_bits)]
    branch: Option<Bits>,
}

fn transport_json(t: &TransportOutcome) -> Value {
    json!({
        "bits": [t.outcome],
        "probability": t.probability,
        "prediction_fidelity": t.prediction_fidelity,
        "corrections": [correction_label(&t.correction)],
        "fidelity": t.corrected_fidelity,
    })
}

pub fn cluster(args: &ClusterArgs, seed: u64) -> Result<Outcome, UsageError> {
    match args.kind {
        ClusterKind::Transport => {
            let psi = random_state(1, seed);
            let outcomes: Vec<u8> = match &args.branch {
                Some(Bits(bits)) if bits.len() == 1 => vec![bits[0]],
                Some(Bits(bits)) => return Err(UsageError(format!("transport measures 1 bit, got {}", bits.len()))),
                None => vec![0, 1],
            };
            let branches = outcomes
                .into_iter()
                .map(|a| cluster_transport(&psi, a).map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            let worst = branches.iter().map(|t| t.corrected_fidelity).fold(1.0, f64::min);
            let mut outcome = ok(
                "cluster",
                args,
                json!({
                    "input": psi,
                    "transported": "H|psi>",
                    "branches": branches.iter().map(transport_json).collect::<Vec<_>>(),
                    "min_fidelity": worst,
                }),
            )?;
            if worst < 1.0 - FIDELITY_TOL {
                outcome.failure = Some(format!("corrected fidelity {worst} below 1"));
            }
            Ok(outcome)
        }
        ClusterKind::Cnot => {
            let psi = random_state(2, seed);
            let branches = match &args.branch {
                Some(Bits(bits)) => vec![cluster_cnot(&psi, &Branch::Forced(bits.clone())).map_err(usage)?],
                None => cluster_cnot_all(&psi).map_err(usage)?,
            };
            branches_outcome("cluster", args, json!(psi), &branches)
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct PtraceCheckArgs {
    /// Qubits per random operator.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    n: u64,
    /// Random Hermitian operators to test; each is traced over every
    /// nonempty qubit subset.
    #[arg(long, default_value_t = 20)]
    trials: u64,
}

pub fn ptrace_check(args: &PtraceCheckArgs, seed: u64) -> Result<Outcome, UsageError> {
    let n = args.n as usize;
    let mut worst: f64 = 0.0;
    let mut checks = 0u64;
    for trial in 0..args.trials {
        let op = random_hermitian(n, seed.wrapping_add(trial));
        for mask in 1..1usize << n {
            let traced: Vec<usize> = (1..=n).filter(|q| mask >> (q - 1) & 1 == 1).collect();
            let a = ptrace(&traced, &op).map_err(usage)?;
            let b = ptrace_direct(&traced, &op).map_err(usage)?;
            worst = worst.max(a.max_abs_diff(&b));
            checks += 1;
        }
    }
    let mut outcome = ok(
        "ptrace-check",
        args,
        json!({ "checks": checks, "max_abs_diff": worst, "tolerance": PTRACE_TOL }),
    )?;
    if worst >= PTRACE_TOL {
        outcome.failure = Some(format!("methods differ by {worst:e}"));
    }
    Ok(outcome)
}

/// Reads a density matrix, or a state vector taken as a pure state.
fn read_state(path: &Path) -> Result<DensityMatrix, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    if let Ok(rho) = serde_json::from_str::<DensityMatrix>(&text) {
        return Ok(rho);
    }
    match serde_json::from_str::<StateVector>(&text) {
        Ok(psi) => from_state(&psi).map_err(usage),
        Err(e) => Err(UsageError(format!(
            "{}: neither a density matrix nor a state vector ({e})",
            path.display()
        ))),
    }
}

#[derive(Debug, Args, Serialize)]
pub struct EntropyArgs {
    /// JSON density matrix `{n_qubits, dimension, entries}` or state vector
    /// `{n_qubits, amplitudes}`.
    #[arg(long)]
    input: PathBuf,
}

pub fn entropy(args: &EntropyArgs) -> Result<Outcome, UsageError> {
    let rho = read_state(&args.input)?;
    let results = json!({
        "n_qubits": rho.n_qubits(),
        "entropy": density::entropy(&rho),
        "purity": rho.purity(),
        "eigenvalues": rho.eigenvalues(),
    });
    ok("entropy", args, results)
}

#[derive(Debug, Args, Serialize)]
pub struct FidelityArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

pub fn fidelity(args: &FidelityArgs) -> Result<Outcome, UsageError> {
    let rho_a = read_state(&args.a)?;
    let rho_b = read_state(&args.b)?;
    let f = density::fidelity(&rho_a, &rho_b).map_err(usage)?;
    ok("fidelity", args, json!({ "fidelity": f }))
}
