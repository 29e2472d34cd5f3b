// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps that re-run GRAPE (or propagate a fixed pulse) over a
//! grid and write CSV/JSON artifacts.
//!
//! Grid points run on a worker pool. With chaining enabled, each point is
//! seeded with its neighbour's optimum, which serializes the chained axis.
//! Records always come back in grid order.

mod output;
mod run;
mod spec;

use thiserror::Error;

use crate::frqme::DynamicsError;
use crate::grape::GrapeError;

pub use output::{
    bloch_trajectory_export, fmt17, prepare_dir, run_dir_name, timestamp, trajectory_csv,
    write_result,
};
pub use run::{
    contour_chi_time, sweep_chi, sweep_detuning, sweep_time, Band, PointRecord, PointStatus,
    Provenance, SweepKind, SweepResult,
};
pub use spec::{Axis, AxisParam, Spacing, SweepSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("output directory {0} already exists; pass force to overwrite")]
    AlreadyExists(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Grape(#[from] GrapeError),
}

impl From<DynamicsError> for SweepError {
    fn from(e: DynamicsError) -> Self {
        SweepError::Grape(e.into())
    }
}

impl From<crate::qops::QopsError> for SweepError {
    fn from(e: crate::qops::QopsError) -> Self {
        SweepError::Grape(e.into())
    }
}
