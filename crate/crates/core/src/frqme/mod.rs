// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Driven two-level system under the fluctuation-regulated master equation.
//!
//! All quantities are dimensionless: times in units of `1/ω_SL`, amplitudes
//! and frequencies in units of `ω_SL`. The equation of motion combines a
//! secular first-order drive, drive-induced dissipation (DID) weighted by the
//! Lorentzian spectral density, and a bath dissipator with static
//! populations `P1`, `P2`.

mod generator;
mod params;
mod propagate;
mod pulse;

use thiserror::Error;

use crate::qops::QopsError;

pub use generator::{generator, spectral_density};
pub use params::{Channels, ModelParams, ModelParamsRepr};
pub use propagate::{
    effective_final_state, final_state, propagate, Diagnostics, Sample, Trajectory,
    DEFAULT_SUBSTEPS, TRACE_FAILURE,
};
pub use pulse::{PulseRepr, PulseSequence};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("invalid pulse: {0}")]
    InvalidPulse(String),
    #[error("integration failed at t' = {t}: trace drifted by {deviation:e}; use more substeps or a shorter step")]
    IntegrationFailure { t: f64, deviation: f64 },
    #[error("state became non-finite at t' = {t}")]
    NonFinite { t: f64 },
    #[error(transparent)]
    State(#[from] QopsError),
}
