// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::GrapeError;
use crate::frqme::DEFAULT_SUBSTEPS;
use crate::qops::NamedState;

/// An initial state and the state it should be steered to. Defaults to
/// `+X -> -X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Transfer {
    pub initial: NamedState,
    pub target: NamedState,
}

impl Transfer {
    pub const fn new(initial: NamedState, target: NamedState) -> Self {
        Self { initial, target }
    }

    /// The four transfers studied for the flux-qubit parameter set.
    pub const REFERENCE: [Transfer; 4] = [
        Transfer::new(NamedState::PlusX, NamedState::MinusX),
        Transfer::new(NamedState::PlusZ, NamedState::PlusX),
        Transfer::new(NamedState::PlusX, NamedState::PlusY),
        Transfer::new(NamedState::PlusS, NamedState::PlusR),
    ];
}

impl Default for Transfer {
    fn default() -> Self {
        Self::REFERENCE[0]
    }
}

impl std::fmt::Display for Transfer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{}", self.initial, self.target)
    }
}

/// Where the first iterate comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialGuess {
    /// The same amplitude on every step.
    Constant { u1: f64, u2: f64 },
    /// Uniform noise in `[-scale, scale]` drawn from the configured seed.
    Random { scale: f64 },
    /// Explicit amplitudes, e.g. from a previous optimization.
    Pulse { u1: Vec<f64>, u2: Vec<f64> },
    /// A pulse file written by an earlier run.
    File { path: PathBuf },
    /// Optimize `source` first (from the default seed, same physics and
    /// discretization) and start from its result.
    WarmStart { source: Transfer },
}

impl Default for InitialGuess {
    fn default() -> Self {
        InitialGuess::Constant { u1: 0.1, u2: 0.1 }
    }
}

/// GRAPE settings. Amplitudes and times are in scaled units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrapeConfig {
    pub n_steps: usize,
    /// Control interval `ΔT'`.
    pub dt: f64,
    pub max_iterations: usize,
    /// Stop when fidelity gained over the last `f_tol_window` iterations is
    /// below this.
    pub f_tol: f64,
    pub f_tol_window: usize,
    /// Stop when the projected gradient's max-norm is below this.
    pub g_tol: f64,
    /// Central-difference step.
    pub h_fd: f64,
    /// First trial step length of each line search.
    pub h0: f64,
    /// Largest change of any single amplitude in one trial step.
    pub max_step: f64,
    /// Line-search shrink factor, in (0, 1).
    pub shrink: f64,
    pub max_backtracks: usize,
    /// Amplitude clamp `|u_k[j]| ≤ u_max`.
    pub u_max: f64,
    /// RK4 micro steps per control interval.
    pub substeps: usize,
    /// Stride, in micro steps, of the final trajectory.
    pub sample_stride: usize,
    pub initial_guess: InitialGuess,
    pub seed: u64,
}

impl Default for GrapeConfig {
    fn default() -> Self {
        Self {
            n_steps: 20,
            dt: 0.1,
            max_iterations: 2000,
            f_tol: 1e-8,
            f_tol_window: 5,
            g_tol: 1e-8,
            h_fd: 1e-4,
            h0: 1000.0,
            max_step: 1.0,
            shrink: 0.5,
            max_backtracks: 60,
            u_max: 50.0,
            substeps: DEFAULT_SUBSTEPS,
            sample_stride: 1,
            initial_guess: InitialGuess::default(),
            seed: 0,
        }
    }
}

impl GrapeConfig {
    pub fn validate(&self) -> Result<(), GrapeError> {
        let bad = |m: String| Err(GrapeError::InvalidConfig(m));
        if self.n_steps == 0 {
            return bad("n_steps must be at least 1".into());
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.h_fd > 0.0) {
            return bad(format!("h_fd must be positive, got {}", self.h_fd));
        }
        if !(self.h0 > 0.0) {
            return bad(format!("h0 must be positive, got {}", self.h0));
        }
        if !(self.max_step > 0.0) {
            return bad(format!("max_step must be positive, got {}", self.max_step));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad(format!("shrink must lie in (0, 1), got {}", self.shrink));
        }
        if !(self.u_max > 0.0) {
            return bad(format!("u_max must be positive, got {}", self.u_max));
        }
        if self.substeps == 0 {
            return bad("substeps must be at least 1".into());
        }
        if self.f_tol_window == 0 {
            return bad("f_tol_window must be at least 1".into());
        }
        if !(self.f_tol >= 0.0 && self.g_tol >= 0.0) {
            return bad("tolerances must be non-negative".into());
        }
        if let InitialGuess::Random { scale } = self.initial_guess {
            if !(scale >= 0.0) {
                return bad(format!(
                    "random guess scale must be non-negative, got {scale}"
                ));
            }
        }
        Ok(())
    }

    pub fn total_time(&self) -> f64 {
        self.dt * self.n_steps as f64
    }
}
