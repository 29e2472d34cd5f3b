// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GrapeConfig, GrapeError, InitialGuess, PulseFile, Transfer};
use crate::frqme::{final_state, propagate, ModelParams, PulseSequence, Trajectory};
use crate::qops::{uhlmann_fidelity, DensityMatrix};
use crate::scalar::Real;

/// Initial state, target and physics of one state-transfer problem.
#[derive(Debug, Clone, Copy)]
pub struct Problem<T: Real> {
    pub rho0: DensityMatrix<T>,
    pub target: DensityMatrix<T>,
    pub params: ModelParams<T>,
    pub substeps: usize,
}

impl<T: Real> Problem<T> {
    pub fn new(
        rho0: DensityMatrix<T>,
        target: DensityMatrix<T>,
        params: ModelParams<T>,
        substeps: usize,
    ) -> Self {
        Self {
            rho0,
            target,
            params,
            substeps,
        }
    }

    pub fn for_transfer(transfer: Transfer, params: ModelParams<T>, substeps: usize) -> Self {
        Self::new(
            transfer.initial.density(),
            transfer.target.density(),
            params,
            substeps,
        )
    }
}

/// Uhlmann fidelity of the propagated final state against the target.
pub fn objective<T: Real>(pulse: &PulseSequence<T>, problem: &Problem<T>) -> Result<T, GrapeError> {
    let (rho, _) = final_state(&problem.rho0, pulse, &problem.params, problem.substeps)?;
    let f = uhlmann_fidelity(&problem.target, &rho)?;
    if !f.is_finite() {
        return Err(GrapeError::NonFinite {
            context: "objective".into(),
        });
    }
    Ok(f)
}

/// Central-difference gradient `∂F/∂u` in the flat layout
/// `[∂F/∂u1[0..N], ∂F/∂u2[0..N]]`. The 2N difference pairs are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn gradient<T: Real>(
    pulse: &PulseSequence<T>,
    problem: &Problem<T>,
    h_fd: T,
) -> Result<Vec<T>, GrapeError> {
    let base = pulse.to_flat();
    let dt = pulse.dt();
    let two_h = h_fd + h_fd;
    (0..base.len())
        .into_par_iter()
        .map(|k| {
            let mut x = base.clone();
            x[k] = base[k] + h_fd;
            let fp = objective(&PulseSequence::from_flat(dt, &x)?, problem)?;
            x[k] = base[k] - h_fd;
            let fm = objective(&PulseSequence::from_flat(dt, &x)?, problem)?;
            Ok((fp - fm) / two_h)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    /// Fidelity gain over the tolerance window fell below `f_tol`.
    FTol,
    /// Projected gradient fell below `g_tol`.
    GTol,
    MaxIter,
    /// The line search found no improving step.
    Stall,
}

impl std::fmt::Display for Convergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convergence::FTol => "f_tol",
            Convergence::GTol => "g_tol",
            Convergence::MaxIter => "max_iter",
            Convergence::Stall => "stall",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct OptimizationReport<T: Real> {
    pub pulse: PulseSequence<T>,
    /// Fidelity of the initial guess followed by every accepted iterate.
    pub fidelity_history: Vec<T>,
    pub final_fidelity: T,
    pub iterations: usize,
    pub convergence: Convergence,
    /// Max-norm of the last projected gradient.
    pub gradient_norm: T,
    pub trajectory: Trajectory<T>,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Zeroes gradient components that push an amplitude further into the clamp.
fn project<T: Real>(grad: &mut [T], x: &[T], u_max: T) {
    for (g, u) in grad.iter_mut().zip(x) {
        if (*u >= u_max && *g > T::zero()) || (*u <= -u_max && *g < T::zero()) {
            *g = T::zero();
        }
    }
}

/// Builds the first iterate described by `cfg.initial_guess`.
pub fn initial_pulse<T: Real>(
    cfg: &GrapeConfig,
    problem: &Problem<T>,
) -> Result<PulseSequence<T>, GrapeError> {
    let n = cfg.n_steps;
    let dt = T::lit(cfg.dt);
    let pulse = match &cfg.initial_guess {
        InitialGuess::Constant { u1, u2 } => {
            PulseSequence::constant(n, dt, T::lit(*u1), T::lit(*u2))?
        }
        InitialGuess::Random { scale } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let flat: Vec<T> = (0..2 * n)
                .map(|_| T::lit(rng.gen_range(-1.0..=1.0) * scale))
                .collect();
            PulseSequence::from_flat(dt, &flat)?
        }
        InitialGuess::Pulse { u1, u2 } => {
            if u1.len() != n || u2.len() != n {
                return Err(GrapeError::DimensionMismatch {
                    expected: n,
                    found: u1.len().max(u2.len()),
                });
            }
            let conv = |v: &Vec<f64>| v.iter().map(|x| T::lit(*x)).collect::<Vec<T>>();
            PulseSequence::new(dt, conv(u1), conv(u2))?
        }
        InitialGuess::File { path } => {
            let file = PulseFile::read(path)?;
            let p = file.pulse()?;
            if p.n_steps() != n {
                return Err(GrapeError::DimensionMismatch {
                    expected: n,
                    found: p.n_steps(),
                });
            }
            let conv = |v: &[f64]| v.iter().map(|x| T::lit(*x)).collect::<Vec<T>>();
            PulseSequence::new(dt, conv(p.u1()), conv(p.u2()))?
        }
        InitialGuess::WarmStart { source } => {
            let mut src_cfg = cfg.clone();
            src_cfg.initial_guess = InitialGuess::default();
            let src_problem = Problem::new(
                source.initial.density(),
                source.target.density(),
                problem.params,
                problem.substeps,
            );
            let report = optimize(&src_cfg, &src_problem)?;
            warm_start(&report, cfg)?
        }
    };
    Ok(pulse.clamped(T::lit(cfg.u_max)))
}

/// Seeds a new optimization with the amplitudes of `from`. The step count
/// and step duration must match `cfg`.
pub fn warm_start<T: Real>(
    from: &OptimizationReport<T>,
    cfg: &GrapeConfig,
) -> Result<PulseSequence<T>, GrapeError> {
    let p = &from.pulse;
    if p.n_steps() != cfg.n_steps {
        return Err(GrapeError::DimensionMismatch {
            expected: cfg.n_steps,
            found: p.n_steps(),
        });
    }
    let dt = p.dt().to_f64_lossy();
    if (dt - cfg.dt).abs() > 1e-12 * cfg.dt.abs().max(1.0) {
        return Err(GrapeError::InvalidConfig(format!(
            "warm start step duration {dt} differs from configured {}",
            cfg.dt
        )));
    }
    Ok(p.clone())
}

/// Gradient ascent on `F` with a backtracking line search.
///
/// Each iteration takes `u ← clamp(u + h·∇F)` with `h` starting at
/// `min(h0, max_step/‖∇F‖∞)` and shrinking until the fidelity strictly
/// improves, so the accepted history is non-decreasing.
pub fn optimize<T: Real>(
    cfg: &GrapeConfig,
    problem: &Problem<T>,
) -> Result<OptimizationReport<T>, GrapeError> {
    let start = initial_pulse(cfg, problem)?;
    optimize_from(cfg, problem, start)
}

/// As [`optimize`], starting from an explicit pulse.
pub fn optimize_from<T: Real>(
    cfg: &GrapeConfig,
    problem: &Problem<T>,
    start: PulseSequence<T>,
) -> Result<OptimizationReport<T>, GrapeError> {
    cfg.validate()?;
    if start.n_steps() != cfg.n_steps {
        return Err(GrapeError::DimensionMismatch {
            expected: cfg.n_steps,
            found: start.n_steps(),
        });
    }
    let clock = Instant::now();
    let u_max = T::lit(cfg.u_max);
    let h_fd = T::lit(cfg.h_fd);
    let shrink = T::lit(cfg.shrink);
    let f_tol = T::lit(cfg.f_tol);
    let g_tol = T::lit(cfg.g_tol);
    let dt = start.dt();

    let mut pulse = start.clamped(u_max);
    let mut fid = objective(&pulse, problem)?;
    let mut history = vec![fid];
    let mut iterations = 0;
    let mut grad_norm;
    let convergence = loop {
        let x = pulse.to_flat();
        let mut grad = gradient(&pulse, problem, h_fd)?;
        project(&mut grad, &x, u_max);
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(GrapeError::NonFinite {
                context: format!("gradient at iteration {iterations}"),
            });
        }
        grad_norm = grad.iter().fold(T::zero(), |m, g| m.max(g.abs()));
        if grad_norm < g_tol {
            break Convergence::GTol;
        }
        if iterations >= cfg.max_iterations {
            break Convergence::MaxIter;
        }

        let mut step = T::lit(cfg.h0).min(T::lit(cfg.max_step) / grad_norm);
        let mut accepted = None;
        for _ in 0..cfg.max_backtracks {
            let trial: Vec<T> = x
                .iter()
                .zip(&grad)
                .map(|(u, g)| (*u + step * *g).max(-u_max).min(u_max))
                .collect();
            let cand = PulseSequence::from_flat(dt, &trial)?;
            let f = objective(&cand, problem)?;
            if f > fid {
                accepted = Some((cand, f));
                break;
            }
            step *= shrink;
        }
        let Some((cand, f)) = accepted else {
            break Convergence::Stall;
        };
        pulse = cand;
        fid = f;
        history.push(fid);
        iterations += 1;

        let w = cfg.f_tol_window;
        if history.len() > w && fid - history[history.len() - 1 - w] < f_tol {
            break Convergence::FTol;
        }
    };

    let trajectory = propagate(
        &problem.rho0,
        &pulse,
        &problem.params,
        problem.substeps,
        cfg.sample_stride,
    )?;
    Ok(OptimizationReport {
        pulse,
        fidelity_history: history,
        final_fidelity: fid,
        iterations,
        convergence,
        gradient_norm: grad_norm,
        trajectory,
        wall_time: clock.elapsed(),
    })
}
