// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use frqme::frqme::DynamicsError;
use frqme::grape::GrapeError;
use frqme::qops::QopsError;
use frqme::sweeps::SweepError;

/// Failure classes, each with its own exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad configuration or input (exit 2).
    Validation(String),
    /// The integration or optimization broke down (exit 3).
    Numerical(String),
    /// Files could not be read or written (exit 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<QopsError> for CliError {
    fn from(e: QopsError) -> Self {
        match e {
            QopsError::NotPositive { .. } | QopsError::FidelityOutOfRange { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::InvalidParams(_) | DynamicsError::InvalidPulse(_) => {
                CliError::Validation(e.to_string())
            }
            DynamicsError::IntegrationFailure { .. } | DynamicsError::NonFinite { .. } => {
                CliError::Numerical(e.to_string())
            }
            DynamicsError::State(q) => q.into(),
        }
    }
}

impl From<GrapeError> for CliError {
    fn from(e: GrapeError) -> Self {
        match e {
            GrapeError::InvalidConfig(_)
            | GrapeError::DimensionMismatch { .. }
            | GrapeError::Parse(_) => CliError::Validation(e.to_string()),
            GrapeError::NonFinite { .. } => CliError::Numerical(e.to_string()),
            GrapeError::Io { .. } => CliError::Io(e.to_string()),
            GrapeError::Dynamics(d) => d.into(),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::InvalidSpec(_) => CliError::Validation(e.to_string()),
            SweepError::AlreadyExists(_) | SweepError::Io { .. } => CliError::Io(e.to_string()),
            SweepError::Grape(g) => g.into(),
        }
    }
}
