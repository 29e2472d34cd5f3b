// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::SweepError;
use crate::frqme::{ModelParams, PulseSequence};
use crate::grape::{GrapeConfig, Transfer};
use crate::qops::NamedState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

/// The quantity varied along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisParam {
    /// Control interval at fixed step count.
    Dt,
    /// Step count at fixed control interval.
    NSteps,
    /// Co-rotating detuning; the counter-rotating frequency shifts with it.
    DeltaMinus,
    Chi,
}

impl AxisParam {
    pub fn name(self) -> &'static str {
        match self {
            AxisParam::Dt => "dt",
            AxisParam::NSteps => "n_steps",
            AxisParam::DeltaMinus => "delta_minus",
            AxisParam::Chi => "chi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: AxisParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(param: AxisParam, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(param: AxisParam, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let name = self.param.name();
        if self.count < 2 {
            return Err(SweepError::InvalidSpec(format!(
                "axis {name} needs at least 2 points, got {}",
                self.count
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(SweepError::InvalidSpec(format!(
                "axis {name} bounds must be finite"
            )));
        }
        if self.spacing == Spacing::Log && !(self.min > 0.0 && self.max > 0.0) {
            return Err(SweepError::InvalidSpec(format!(
                "log-spaced axis {name} needs positive bounds, got [{}, {}]",
                self.min, self.max
            )));
        }
        let positive = matches!(
            self.param,
            AxisParam::Dt | AxisParam::Chi | AxisParam::NSteps
        );
        if positive && !(self.min > 0.0 && self.max > 0.0) {
            return Err(SweepError::InvalidSpec(format!(
                "axis {name} needs positive bounds, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.param == AxisParam::NSteps {
            let v = self.values();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(SweepError::InvalidSpec(
                    "n_steps axis rounds to repeated step counts".into(),
                ));
            }
        }
        Ok(())
    }

    /// Grid values in order; both endpoints are exact. Step counts are
    /// rounded to integers.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count.max(2) - 1) as f64;
        let raw = (0..self.count).map(|i| {
            if i == 0 {
                return self.min;
            }
            if i + 1 == self.count {
                return self.max;
            }
            let s = i as f64 / last;
            match self.spacing {
                Spacing::Linear => self.min + s * (self.max - self.min),
                Spacing::Log => (self.min.ln() + s * (self.max.ln() - self.min.ln())).exp(),
            }
        });
        if self.param == AxisParam::NSteps {
            raw.map(f64::round).collect()
        } else {
            raw.collect()
        }
    }
}

/// One experiment: a transfer, its physics and optimizer settings, and the
/// grid over which they are varied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub transfer: Transfer,
    pub axes: Vec<Axis>,
    pub grape: GrapeConfig,
    pub params: ModelParams<f64>,
    /// Re-run GRAPE at every point (`true`) or propagate one fixed pulse.
    /// `None` selects the default of the sweep kind.
    #[serde(default)]
    pub reoptimize: Option<bool>,
    /// Seed each point with the optimum of its neighbour along the chained
    /// axis.
    #[serde(default = "yes")]
    pub chain: bool,
    /// Worker threads; 0 uses all available cores.
    #[serde(default)]
    pub workers: usize,
    /// Pulse used when not re-optimizing. When absent it is optimized at
    /// zero detuning with the base configuration.
    #[serde(default)]
    pub fixed_pulse: Option<PulseSequence<f64>>,
}

fn yes() -> bool {
    true
}

impl SweepSpec {
    pub fn new(transfer: Transfer, axes: Vec<Axis>) -> Self {
        Self {
            transfer,
            axes,
            grape: GrapeConfig::default(),
            params: ModelParams::flux_qubit(),
            reoptimize: None,
            chain: true,
            workers: 0,
            fixed_pulse: None,
        }
    }

    /// 40 total times `T' ∈ [0.25, 10]` by varying `ΔT'` at `N = 20`.
    pub fn default_time(transfer: Transfer) -> Self {
        Self::new(transfer, vec![Axis::linear(AxisParam::Dt, 0.0125, 0.5, 40)])
    }

    /// 61 detunings over `[−3, 3]`.
    pub fn default_detuning(transfer: Transfer) -> Self {
        Self::new(
            transfer,
            vec![Axis::linear(AxisParam::DeltaMinus, -3.0, 3.0, 61)],
        )
    }

    /// 17 log-spaced `χ ∈ [10⁻⁵, 10⁻¹]`.
    pub fn default_chi(transfer: Transfer) -> Self {
        Self::new(transfer, vec![Axis::log(AxisParam::Chi, 1e-5, 1e-1, 17)])
    }

    /// 17 `χ` values by 25 control intervals `ΔT' ∈ [0.025, 0.25]` at `N = 20`.
    pub fn default_contour(transfer: Transfer) -> Self {
        Self::new(
            transfer,
            vec![
                Axis::log(AxisParam::Chi, 1e-5, 1e-1, 17),
                Axis::linear(AxisParam::Dt, 0.025, 0.25, 25),
            ],
        )
    }

    pub fn with_grape(mut self, grape: GrapeConfig) -> Self {
        self.grape = grape;
        self
    }

    pub fn with_params(mut self, params: ModelParams<f64>) -> Self {
        self.params = params;
        self
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        self.grape.validate()?;
        for axis in &self.axes {
            axis.validate()?;
        }
        Ok(())
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self::default_time(Transfer::new(NamedState::PlusX, NamedState::MinusX))
    }
}
