// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::scalar::Real;

/// Piecewise-constant amplitudes on the two drive channels.
///
/// Step `j` spans `[j·dt, (j+1)·dt)` and carries the complex amplitude
/// `α' = (u1[j] − i·u2[j]) / 4`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "PulseRepr<T>",
    into = "PulseRepr<T>",
    bound(
        serialize = "T: Real + Serialize",
        deserialize = "T: Real + Deserialize<'de>"
    )
)]
pub struct PulseSequence<T: Real> {
    dt: T,
    u1: Vec<T>,
    u2: Vec<T>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseRepr<T> {
    pub n_steps: usize,
    pub dt: T,
    pub u1: Vec<T>,
    pub u2: Vec<T>,
}

impl<T: Real> PulseSequence<T> {
    pub fn new(dt: T, u1: Vec<T>, u2: Vec<T>) -> Result<Self, DynamicsError> {
        let bad = |m: String| Err(DynamicsError::InvalidPulse(m));
        if u1.is_empty() {
            return bad("pulse needs at least one step".into());
        }
        if u1.len() != u2.len() {
            return bad(format!(
                "channel lengths differ: u1 has {}, u2 has {}",
                u1.len(),
                u2.len()
            ));
        }
        if !(dt > T::zero()) || !dt.is_finite() {
            return bad(format!(
                "step duration must be positive and finite, got {dt}"
            ));
        }
        if let Some(j) = u1.iter().chain(&u2).position(|v| !v.is_finite()) {
            return bad(format!("non-finite amplitude at flat index {j}"));
        }
        Ok(Self { dt, u1, u2 })
    }

    pub fn constant(n_steps: usize, dt: T, u1: T, u2: T) -> Result<Self, DynamicsError> {
        Self::new(dt, vec![u1; n_steps], vec![u2; n_steps])
    }

    pub fn zeros(n_steps: usize, dt: T) -> Result<Self, DynamicsError> {
        Self::constant(n_steps, dt, T::zero(), T::zero())
    }

    /// Builds a pulse from the flat layout `[u1[0..N], u2[0..N]]`.
    pub fn from_flat(dt: T, flat: &[T]) -> Result<Self, DynamicsError> {
        if !flat.len().is_multiple_of(2) {
            return Err(DynamicsError::InvalidPulse(format!(
                "flat control vector has odd length {}",
                flat.len()
            )));
        }
        let n = flat.len() / 2;
        Self::new(dt, flat[..n].to_vec(), flat[n..].to_vec())
    }

    pub fn to_flat(&self) -> Vec<T> {
        self.u1.iter().chain(&self.u2).copied().collect()
    }

    pub fn n_steps(&self) -> usize {
        self.u1.len()
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn total_time(&self) -> T {
        self.dt * T::from_usize(self.n_steps()).expect("step count fits")
    }

    pub fn u1(&self) -> &[T] {
        &self.u1
    }

    pub fn u2(&self) -> &[T] {
        &self.u2
    }

    /// `α'` during step `j`.
    pub fn alpha(&self, j: usize) -> Complex<T> {
        let q = T::lit(0.25);
        Complex::new(self.u1[j] * q, -self.u2[j] * q)
    }

    /// Same amplitudes with a different step duration.
    pub fn with_dt(&self, dt: T) -> Result<Self, DynamicsError> {
        Self::new(dt, self.u1.clone(), self.u2.clone())
    }

    /// Resamples onto `n_steps` steps of `dt`. The shape is sampled at step
    /// midpoints and rescaled by the ratio of total times, so the pulse area
    /// of each channel is kept.
    pub fn resampled(&self, n_steps: usize, dt: T) -> Result<Self, DynamicsError> {
        let old_total = self.total_time();
        let new_total = dt * T::from_usize(n_steps).expect("step count fits");
        let gain = old_total / new_total;
        let n_old = T::from_usize(self.n_steps()).expect("step count fits");
        let n_new = T::from_usize(n_steps.max(1)).expect("step count fits");
        let pick = |ch: &[T]| -> Vec<T> {
            (0..n_steps)
                .map(|k| {
                    let mid = (T::from_usize(k).expect("fits") + T::lit(0.5)) / n_new;
                    let idx = (mid * n_old).floor().to_usize().unwrap_or(0);
                    ch[idx.min(ch.len() - 1)] * gain
                })
                .collect()
        };
        Self::new(dt, pick(&self.u1), pick(&self.u2))
    }

    /// Clamps every amplitude into `[-limit, limit]`.
    pub fn clamped(&self, limit: T) -> Self {
        let c = |v: &T| v.max(-limit).min(limit);
        Self {
            dt: self.dt,
            u1: self.u1.iter().map(c).collect(),
            u2: self.u2.iter().map(c).collect(),
        }
    }

    /// `Σ_j √(u1² + u2²)·dt`, the rotation angle for a fixed-axis pulse.
    pub fn area(&self) -> T {
        self.u1
            .iter()
            .zip(&self.u2)
            .map(|(a, b)| (*a * *a + *b * *b).sqrt() * self.dt)
            .fold(T::zero(), |s, v| s + v)
    }

    pub fn max_abs_amplitude(&self) -> T {
        self.u1
            .iter()
            .chain(&self.u2)
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

impl<T: Real> TryFrom<PulseRepr<T>> for PulseSequence<T> {
    type Error = DynamicsError;
    fn try_from(r: PulseRepr<T>) -> Result<Self, Self::Error> {
        if r.n_steps != r.u1.len() {
            return Err(DynamicsError::InvalidPulse(format!(
                "n_steps = {} but u1 has {} entries",
                r.n_steps,
                r.u1.len()
            )));
        }
        Self::new(r.dt, r.u1, r.u2)
    }
}

impl<T: Real> From<PulseSequence<T>> for PulseRepr<T> {
    fn from(p: PulseSequence<T>) -> Self {
        Self {
            n_steps: p.n_steps(),
            dt: p.dt,
            u1: p.u1,
            u2: p.u2,
        }
    }
}
