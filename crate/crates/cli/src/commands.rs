// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use frqme::frqme::{propagate, Diagnostics, PulseSequence};
use frqme::grape::{initial_pulse, optimize, Convergence, Problem, PulseFile, PulseMeta};
use frqme::qops::{uhlmann_fidelity, NamedState};
use frqme::sweeps::{
    contour_chi_time, prepare_dir, run_dir_name, sweep_chi, sweep_detuning, sweep_time, timestamp,
    trajectory_csv, write_result, SweepResult, SweepSpec,
};
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::error::CliError;

pub const OUTPUT_ROOT_ENV: &str = "FRQME_OUTPUT_ROOT";

fn output_dir(cfg: &RunConfig) -> PathBuf {
    if let Some(d) = &cfg.output.dir {
        return d.clone();
    }
    let root = cfg
        .output
        .root
        .clone()
        .or_else(|| std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("runs"));
    let label = cfg.output.label.clone().unwrap_or_else(|| {
        format!(
            "{}_{}_{}",
            cfg.command.name(),
            cfg.transfer.initial,
            cfg.transfer.target
        )
    });
    run_dir_name(&root, &label)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

#[derive(Serialize)]
struct OptimizeSummary<'a> {
    config: &'a RunConfig,
    final_fidelity: f64,
    iterations: usize,
    convergence: Convergence,
    gradient_norm: f64,
    fidelity_history: &'a [f64],
    final_bloch: [f64; 3],
    final_purity: f64,
    diagnostics: Diagnostics<f64>,
    version: &'static str,
    created: String,
}

#[derive(Serialize)]
struct PropagateSummary<'a> {
    config: &'a RunConfig,
    fidelity: f64,
    final_bloch: [f64; 3],
    final_purity: f64,
    diagnostics: Diagnostics<f64>,
    version: &'static str,
    created: String,
}

fn pulse_meta(cfg: &RunConfig, fidelity: f64) -> Result<PulseMeta, CliError> {
    Ok(PulseMeta {
        params: cfg.model_params()?.to_repr(),
        transfer: cfg.transfer,
        fidelity,
    })
}

pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command {
        Command::States => Ok(states_table()),
        Command::Optimize => run_optimize(cfg),
        Command::Propagate => run_propagate(cfg),
        Command::SweepTime | Command::SweepDetuning | Command::SweepChi | Command::Contour => {
            run_sweep(cfg)
        }
    }
}

fn run_optimize(cfg: &RunConfig) -> Result<String, CliError> {
    let params = cfg.model_params()?;
    let problem = Problem::for_transfer(cfg.transfer, params, cfg.grape.substeps);
    let dir = output_dir(cfg);
    prepare_dir(&dir, cfg.output.force)?;
    let rep = optimize(&cfg.grape, &problem)?;
    let last = rep.trajectory.final_sample();

    PulseFile::new(&rep.pulse, Some(pulse_meta(cfg, rep.final_fidelity)?))
        .write(&dir.join("pulse.json"))?;
    write(
        &dir.join("trajectory.csv"),
        &trajectory_csv(&rep.trajectory),
    )?;
    let summary = OptimizeSummary {
        config: cfg,
        final_fidelity: rep.final_fidelity,
        iterations: rep.iterations,
        convergence: rep.convergence,
        gradient_norm: rep.gradient_norm,
        fidelity_history: &rep.fidelity_history,
        final_bloch: last.bloch,
        final_purity: last.rho.purity(),
        diagnostics: rep.trajectory.diagnostics,
        version: env!("CARGO_PKG_VERSION"),
        created: timestamp(),
    };
    write(&dir.join("report.json"), &to_json(&summary))?;
    Ok(format!(
        "optimize {}: F = {} after {} iterations ({}), T' = {} -> {}",
        cfg.transfer,
        rep.final_fidelity,
        rep.iterations,
        rep.convergence,
        rep.pulse.total_time(),
        dir.display()
    ))
}

fn load_pulse(path: &Path, n_steps: usize) -> Result<PulseSequence<f64>, CliError> {
    let pulse = PulseFile::read(path)?.pulse()?;
    if pulse.n_steps() != n_steps {
        return Err(CliError::Validation(format!(
            "{} holds {} steps but grape.n_steps is {n_steps}",
            path.display(),
            pulse.n_steps()
        )));
    }
    Ok(pulse)
}

fn run_propagate(cfg: &RunConfig) -> Result<String, CliError> {
    let params = cfg.model_params()?;
    let problem = Problem::for_transfer(cfg.transfer, params, cfg.grape.substeps);
    let pulse = match &cfg.propagate.pulse {
        Some(path) => PulseFile::read(path)?.pulse()?,
        None => initial_pulse(&cfg.grape, &problem)?,
    };
    let dir = output_dir(cfg);
    prepare_dir(&dir, cfg.output.force)?;
    let traj = propagate(
        &problem.rho0,
        &pulse,
        &params,
        cfg.grape.substeps,
        cfg.propagate.sample_stride,
    )?;
    let last = traj.final_sample();
    let fidelity = uhlmann_fidelity(&problem.target, &last.rho)?;
    write(&dir.join("trajectory.csv"), &trajectory_csv(&traj))?;
    PulseFile::new(&pulse, Some(pulse_meta(cfg, fidelity)?)).write(&dir.join("pulse.json"))?;
    let summary = PropagateSummary {
        config: cfg,
        fidelity,
        final_bloch: last.bloch,
        final_purity: last.rho.purity(),
        diagnostics: traj.diagnostics,
        version: env!("CARGO_PKG_VERSION"),
        created: timestamp(),
    };
    write(&dir.join("summary.json"), &to_json(&summary))?;
    Ok(format!(
        "propagate {}: F = {fidelity}, final Bloch ({}, {}, {}) -> {}",
        cfg.transfer,
        last.bloch[0],
        last.bloch[1],
        last.bloch[2],
        dir.display()
    ))
}

fn sweep_spec(cfg: &RunConfig) -> Result<SweepSpec, CliError> {
    let axes = cfg
        .sweep
        .axes
        .clone()
        .ok_or_else(|| CliError::Validation("sweep.axes is unset".into()))?;
    let fixed_pulse = match &cfg.sweep.fixed_pulse {
        Some(p) => Some(load_pulse(p, cfg.grape.n_steps)?),
        None => None,
    };
    Ok(SweepSpec {
        transfer: cfg.transfer,
        axes,
        grape: cfg.grape.clone(),
        params: cfg.model_params()?,
        reoptimize: cfg.sweep.reoptimize,
        chain: cfg.sweep.chain,
        workers: cfg.sweep.workers,
        fixed_pulse,
    })
}

fn run_sweep(cfg: &RunConfig) -> Result<String, CliError> {
    let spec = sweep_spec(cfg)?;
    let dir = output_dir(cfg);
    if dir.exists() && !cfg.output.force {
        return Err(CliError::Io(format!(
            "output directory {} already exists; pass --force to overwrite",
            dir.display()
        )));
    }
    let result = match cfg.command {
        Command::SweepTime => sweep_time(&spec),
        Command::SweepDetuning => sweep_detuning(&spec),
        Command::SweepChi => sweep_chi(&spec),
        Command::Contour => contour_chi_time(&spec),
        _ => unreachable!("not a sweep"),
    }?;
    write_result(&result, &dir, cfg.output.force)?;
    write(&dir.join("config.json"), &cfg.to_json())?;
    sweep_summary(cfg, &result, &dir)
}

fn sweep_summary(cfg: &RunConfig, r: &SweepResult, dir: &Path) -> Result<String, CliError> {
    let ok: Vec<_> = r.points.iter().filter(|p| p.is_ok()).collect();
    let Some(best) = r.argmax() else {
        return Err(CliError::Numerical(format!(
            "every grid point failed; see {}",
            dir.join("index.json").display()
        )));
    };
    let worst = ok
        .iter()
        .min_by(|a, b| a.fidelity.partial_cmp(&b.fidelity).expect("finite"))
        .expect("at least one point");
    let coords = |c: &[f64]| {
        c.iter()
            .zip(&r.provenance.spec.axes)
            .map(|(v, a)| format!("{} = {v}", a.param.name()))
            .collect::<Vec<_>>()
            .join(", ")
    };
    Ok(format!(
        "{} {}: {}/{} points ok; max F = {} at {}; min F = {} at {} -> {}",
        cfg.command.name(),
        cfg.transfer,
        ok.len(),
        r.points.len(),
        best.fidelity.expect("ok point"),
        coords(&best.coords),
        worst.fidelity.expect("ok point"),
        coords(&worst.coords),
        dir.display()
    ))
}

/// Every library state with its amplitudes and Bloch vector.
pub fn states_table() -> String {
    let mut s = format!(
        "{:<5} {:>24} {:>24}   {:>10} {:>10} {:>10}\n",
        "state", "<0|psi>", "<1|psi>", "x", "y", "z"
    );
    for st in NamedState::ALL {
        let [a, b] = st.state_vector::<f64>().amplitudes();
        let [x, y, z] = st.density::<f64>().bloch_vector();
        let c = |re: f64, im: f64| format!("{:+.7}{:+.7}i", clean(re), clean(im));
        let _ = writeln!(
            s,
            "{:<5} {:>24} {:>24}   {:>10.7} {:>10.7} {:>10.7}",
            st.label(),
            c(a.re, a.im),
            c(b.re, b.im),
            clean(x),
            clean(y),
            clean(z)
        );
    }
    s.pop();
    s
}

/// Folds `-0.0` and round-off dust into `0`.
fn clean(v: f64) -> f64 {
    if v.abs() < 1e-15 {
        0.0
    } else {
        v
    }
}
