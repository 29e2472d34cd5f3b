// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Gradient ascent pulse engineering over the two drive channels.
//!
//! Gradients are central finite differences of the propagated fidelity, so
//! every dissipation channel of the model is differentiated exactly as it is
//! integrated.

mod config;
mod optimize;
mod pulse_file;

use thiserror::Error;

use crate::frqme::DynamicsError;
use crate::qops::QopsError;

pub use config::{GrapeConfig, InitialGuess, Transfer};
pub use optimize::{
    gradient, initial_pulse, objective, optimize, optimize_from, warm_start, Convergence,
    OptimizationReport, Problem,
};
pub use pulse_file::{PulseFile, PulseMeta};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrapeError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: expected {expected} steps, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value in {context}")]
    NonFinite { context: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

impl From<QopsError> for GrapeError {
    fn from(e: QopsError) -> Self {
        GrapeError::Dynamics(e.into())
    }
}
