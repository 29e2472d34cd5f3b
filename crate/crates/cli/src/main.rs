// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! `frqme`: optimize control pulses for a driven, dissipative qubit and run
//! parameter sweeps.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 I/O.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frqme::qops::NamedState;
use serde_json::Value;

use crate::config::{apply_override, from_document, parse_override, read_document, Command};
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "frqme",
    version,
    about = "Pulse engineering under drive-induced dissipation"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Optimize a pulse for one state transfer.
    Optimize(RunArgs),
    /// Propagate a pulse file (or the configured initial guess) and export
    /// the Bloch trajectory.
    Propagate(RunArgs),
    /// Best fidelity against total evolution time.
    SweepTime(RunArgs),
    /// Fidelity against detuning.
    SweepDetuning(RunArgs),
    /// Re-optimized fidelity and pulse band against correlation time.
    SweepChi(RunArgs),
    /// Fidelity over correlation time × evolution time.
    Contour(RunArgs),
    /// List the state library with amplitudes and Bloch vectors.
    States,
}

#[derive(Args, Default)]
struct RunArgs {
    /// Initial state label, e.g. +X.
    #[arg(allow_hyphen_values = true)]
    initial: Option<String>,
    /// Target state label, e.g. -X.
    #[arg(allow_hyphen_values = true)]
    target: Option<String>,
    /// JSON run configuration.
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Override a configuration value, e.g. `--set grape.n_steps=40`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Print the effective configuration as canonical JSON and exit.
    #[arg(long)]
    print_config: bool,
    /// Exact output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parent directory for timestamped run directories.
    #[arg(long, env = commands::OUTPUT_ROOT_ENV)]
    output_root: Option<PathBuf>,
    /// Run label appended to the timestamped directory name.
    #[arg(long)]
    label: Option<String>,
    /// Write into an existing output directory.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Switch off every dissipation channel.
    #[arg(long)]
    dissipation_free: bool,
    /// Pulse file: propagated by `propagate`, held fixed by sweeps.
    #[arg(long)]
    pulse: Option<PathBuf>,
}

fn label(s: &str) -> Result<Value, CliError> {
    let st: NamedState = s
        .parse()
        .map_err(|e: frqme::qops::QopsError| CliError::Validation(e.to_string()))?;
    Ok(Value::String(st.label().to_string()))
}

fn build_config(cmd: Command, args: &RunArgs) -> Result<config::RunConfig, CliError> {
    let mut doc = match &args.config {
        Some(p) => read_document(p)?,
        None => Value::Object(Default::default()),
    };
    let key = |s: &str| -> Vec<String> { s.split('.').map(str::to_string).collect() };
    for s in &args.set {
        let (path, value) = parse_override(s)?;
        apply_override(&mut doc, &path, value)?;
    }
    apply_override(&mut doc, &key("command"), Value::String(cmd.name().into()))?;
    if let Some(s) = &args.initial {
        apply_override(&mut doc, &key("transfer.initial"), label(s)?)?;
    }
    if let Some(s) = &args.target {
        apply_override(&mut doc, &key("transfer.target"), label(s)?)?;
    }
    if let Some(seed) = args.seed {
        apply_override(&mut doc, &key("grape.seed"), seed.into())?;
    }
    if let Some(w) = args.workers {
        apply_override(&mut doc, &key("sweep.workers"), w.into())?;
    }
    if let Some(p) = &args.out {
        apply_override(&mut doc, &key("output.dir"), p.display().to_string().into())?;
    }
    if let Some(p) = &args.output_root {
        apply_override(
            &mut doc,
            &key("output.root"),
            p.display().to_string().into(),
        )?;
    }
    if let Some(l) = &args.label {
        apply_override(&mut doc, &key("output.label"), l.clone().into())?;
    }
    if args.force {
        apply_override(&mut doc, &key("output.force"), true.into())?;
    }
    if let Some(p) = &args.pulse {
        let k = if cmd == Command::Propagate {
            "propagate.pulse"
        } else {
            "sweep.fixed_pulse"
        };
        apply_override(&mut doc, &key(k), p.display().to_string().into())?;
    }
    if args.dissipation_free {
        let off = serde_json::json!({
            "environment": false, "did_lindblad": false, "did_double_commutator": false
        });
        apply_override(&mut doc, &key("params.channels"), off)?;
    }
    from_document(doc)?.canonical()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Sub::Optimize(a) => (Command::Optimize, a),
        Sub::Propagate(a) => (Command::Propagate, a),
        Sub::SweepTime(a) => (Command::SweepTime, a),
        Sub::SweepDetuning(a) => (Command::SweepDetuning, a),
        Sub::SweepChi(a) => (Command::SweepChi, a),
        Sub::Contour(a) => (Command::Contour, a),
        Sub::States => (Command::States, RunArgs::default()),
    };
    let result = build_config(cmd, &args).and_then(|cfg| {
        if args.print_config {
            Ok(cfg.to_json())
        } else {
            commands::run(&cfg)
        }
    });
    match result {
        Ok(line) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("frqme: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
