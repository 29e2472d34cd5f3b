// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Optimal control of a driven, dissipative qubit.
//!
//! - [`qops`]: 2×2 operator algebra, state library, Bloch vectors and
//!   Uhlmann fidelity.
//! - [`frqme`]: the scaled master equation with drive-induced dissipation,
//!   and a fixed-step RK4 propagator.
//! - [`grape`]: gradient ascent on piecewise-constant pulses.
//! - [`sweeps`]: parameter sweeps over evolution time, detuning and
//!   correlation time, with CSV/JSON output.
//!
//! The operator algebra and dynamics are generic over [`Real`]; the aliases
//! below fix the scalar to `f64` or `f32`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod frqme;
pub mod grape;
pub mod qops;
pub mod scalar;
pub mod sweeps;

pub use scalar::Real;

pub type Mat2 = qops::CMat2<f64>;
pub type Density = qops::DensityMatrix<f64>;
pub type Params = frqme::ModelParams<f64>;
pub type Pulse = frqme::PulseSequence<f64>;
pub type Traj = frqme::Trajectory<f64>;

pub type Mat2F32 = qops::CMat2<f32>;
pub type DensityF32 = qops::DensityMatrix<f32>;
pub type ParamsF32 = frqme::ModelParams<f32>;
pub type PulseF32 = frqme::PulseSequence<f32>;
