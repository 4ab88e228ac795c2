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

//! `qdm`: runs the simulator's demos and diagnostics and prints a JSON
//! document `{"command", "params", "seed", "results"}`.
//!
//! Exit status is 0 on success, 2 on a usage error and 1 when an algorithm
//! ran but failed (a Shor batch with no factors, a failed oracle check).

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{Outcome, UsageError};

#[derive(Debug, Parser)]
#[command(name = "qdm", version, about = "Density-matrix quantum computer simulator")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Seed for every random choice; an explicit flag wins over QDM_SEED.
    #[arg(long, global = true, env = "QDM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bell state |B_ab> and its entanglement diagnostics.
    Bell(commands::BellArgs),
    /// GHZ state |G_abc> and its reductions.
    Ghz(commands::GhzArgs),
    /// Werner state lambda |B_ab><B_ab| + (1 - lambda) I/4.
    Werner(commands::WernerArgs),
    /// Teleportation on every branch, or on one forced branch.
    Teleport(commands::TeleportArgs),
    /// Grover search.
    Grover(commands::GroverArgs),
    /// Shor factoring over a batch of seeded runs.
    Shor(commands::ShorArgs),
    /// Cluster-model transport and CNOT.
    Cluster(commands::ClusterArgs),
    /// Compares the Pauli-expansion partial trace against direct summation.
    PtraceCheck(commands::PtraceCheckArgs),
    /// Von Neumann entropy of a state read from a JSON file.
    Entropy(commands::EntropyArgs),
    /// Fidelity between two states read from JSON files.
    Fidelity(commands::FidelityArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.global.seed;
    let result = match &cli.command {
        Command::Bell(a) => commands::bell(a),
        Command::Ghz(a) => commands::ghz(a),
        Command::Werner(a) => commands::werner(a),
        Command::Teleport(a) => commands::teleport(a, seed),
        Command::Grover(a) => commands::grover(a),
        Command::Shor(a) => commands::shor(a, seed),
        Command::Cluster(a) => commands::cluster(a, seed),
        Command::PtraceCheck(a) => commands::ptrace_check(a, seed),
        Command::Entropy(a) => commands::entropy(a),
        Command::Fidelity(a) => commands::fidelity(a),
    };
    match result {
        Ok(outcome) => emit(&cli, seed, outcome),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, seed: u64, outcome: Outcome) -> ExitCode {
    let doc = serde_json::json!({
        "command": outcome.command,
        "params": outcome.params,
        "seed": seed,
        "results": outcome.results,
    });
    let text = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("JSON values serialize"),
        Format::Table => render::table(&doc),
    };
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    };
    match written {
        // a closed pipe (`qdm ... | head`) is the reader's choice, not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(2);
        }
        Ok(()) => {}
    }
    if let Some(reason) = outcome.failure {
        eprintln!("failure: {reason}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
