// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a JSON document with one section per concern, plus
//! dotted-key overrides (`grape.n_steps=40`) applied on top.

use std::fs;
use std::path::{Path, PathBuf};

use frqme::frqme::{Channels, ModelParams};
use frqme::grape::{GrapeConfig, Transfer};
use frqme::qops::NamedState;
use frqme::sweeps::{Axis, SweepSpec};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Optimize,
    Propagate,
    SweepTime,
    SweepDetuning,
    SweepChi,
    Contour,
    States,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Optimize => "optimize",
            Command::Propagate => "propagate",
            Command::SweepTime => "sweep-time",
            Command::SweepDetuning => "sweep-detuning",
            Command::SweepChi => "sweep-chi",
            Command::Contour => "contour",
            Command::States => "states",
        }
    }

    fn default_axes(self, transfer: Transfer) -> Option<Vec<Axis>> {
        let spec = match self {
            Command::SweepTime => SweepSpec::default_time(transfer),
            Command::SweepDetuning => SweepSpec::default_detuning(transfer),
            Command::SweepChi => SweepSpec::default_chi(transfer),
            Command::Contour => SweepSpec::default_contour(transfer),
            _ => return None,
        };
        Some(spec.axes)
    }
}

/// Physical constants. Unset `p1`/`p2` complete each other to sum to 1;
/// unset `delta_plus` is `delta_minus + 2·omega_ratio`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub omega_ratio: f64,
    pub delta_minus: f64,
    pub delta_plus: Option<f64>,
    pub chi: f64,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub channels: Channels,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        Self {
            omega_ratio: 572.3,
            delta_minus: 0.0,
            delta_plus: None,
            chi: 0.033,
            p1: None,
            p2: None,
            channels: Channels::all(),
        }
    }
}

impl ParamsConfig {
    pub fn resolve(&self) -> Result<ModelParams<f64>, CliError> {
        let (p1, p2) = match (self.p1, self.p2) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a, 1.0 - a),
            (None, Some(b)) => (1.0 - b, b),
            (None, None) => (0.8, 0.2),
        };
        let delta_plus = self
            .delta_plus
            .unwrap_or(self.delta_minus + 2.0 * self.omega_ratio);
        ModelParams::from_parts(
            self.omega_ratio,
            self.delta_minus,
            delta_plus,
            self.chi,
            p1,
            p2,
        )
        .map(|p| p.with_channels(self.channels))
        .map_err(|e| CliError::Validation(format!("params: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Grid axes; the subcommand's default grid when unset.
    pub axes: Option<Vec<Axis>>,
    pub reoptimize: Option<bool>,
    pub chain: bool,
    /// Worker threads; 0 uses every core.
    pub workers: usize,
    /// Pulse file propagated by fixed-pulse sweeps.
    pub fixed_pulse: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            axes: None,
            reoptimize: None,
            chain: true,
            workers: 0,
            fixed_pulse: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagateConfig {
    /// Pulse file to propagate; the configured initial guess when unset.
    pub pulse: Option<PathBuf>,
    pub sample_stride: usize,
}

impl Default for PropagateConfig {
    fn default() -> Self {
        Self {
            pulse: None,
            sample_stride: 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Exact run directory. When unset a `<timestamp>_<label>` directory is
    /// created under `root`.
    pub dir: Option<PathBuf>,
    /// Parent of generated run directories; `$FRQME_OUTPUT_ROOT` or `runs`.
    pub root: Option<PathBuf>,
    pub label: Option<String>,
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub transfer: Transfer,
    pub params: ParamsConfig,
    pub grape: GrapeConfig,
    pub sweep: SweepConfig,
    pub propagate: PropagateConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Optimize,
            transfer: Transfer::new(NamedState::PlusX, NamedState::MinusX),
            params: ParamsConfig::default(),
            grape: GrapeConfig::default(),
            sweep: SweepConfig::default(),
            propagate: PropagateConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

/// Parses `key.path=value`; the value is JSON when it parses as JSON and a
/// plain string otherwise.
pub fn parse_override(s: &str) -> Result<(Vec<String>, Value), CliError> {
    let (key, raw) = s
        .split_once('=')
        .ok_or_else(|| CliError::Validation(format!("override {s:?} is not KEY=VALUE")))?;
    let path: Vec<String> = key.trim().split('.').map(str::to_string).collect();
    if path.iter().any(String::is_empty) {
        return Err(CliError::Validation(format!(
            "override key {key:?} is malformed"
        )));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    Ok((path, value))
}

pub fn apply_override(doc: &mut Value, path: &[String], value: Value) -> Result<(), CliError> {
    let mut node = doc;
    for (i, key) in path.iter().enumerate() {
        let obj = node.as_object_mut().ok_or_else(|| {
            CliError::Validation(format!(
                "cannot set {}: {} is not an object",
                path.join("."),
                path[..i].join(".")
            ))
        })?;
        if i + 1 == path.len() {
            obj.insert(key.clone(), value);
            return Ok(());
        }
        node = obj
            .entry(key.clone())
            .or_insert_with(|| Value::Object(Map::new()));
        if node.is_null() {
            *node = Value::Object(Map::new());
        }
    }
    Ok(())
}

pub fn read_document(path: &Path) -> Result<Value, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    if !v.is_object() {
        return Err(CliError::Validation(format!(
            "{}: configuration must be a JSON object",
            path.display()
        )));
    }
    Ok(v)
}

/// Strict deserialization; errors carry the offending key path.
pub fn from_document(doc: Value) -> Result<RunConfig, CliError> {
    serde_path_to_error::deserialize(doc).map_err(|e| {
        let path = e.path().to_string();
        CliError::Validation(format!("config key {path}: {}", e.inner()))
    })
}

impl RunConfig {
    /// Fills every defaulted field with its effective value and checks all
    /// invariants. Parsing the result yields the same configuration.
    pub fn canonical(&self) -> Result<RunConfig, CliError> {
        let params = self.params.resolve()?;
        self.grape
            .validate()
            .map_err(|e| CliError::Validation(format!("grape: {e}")))?;
        if self.propagate.sample_stride == 0 {
            return Err(CliError::Validation(
                "propagate.sample_stride must be at least 1".into(),
            ));
        }
        let mut out = self.clone();
        out.params.p1 = Some(params.p1());
        out.params.p2 = Some(params.p2());
        out.params.delta_plus = Some(params.delta_plus());
        if out.sweep.axes.is_none() {
            out.sweep.axes = self.command.default_axes(self.transfer);
        }
        if let Some(axes) = &out.sweep.axes {
            for a in axes {
                a.validate()
                    .map_err(|e| CliError::Validation(format!("sweep.axes: {e}")))?;
            }
        }
        Ok(out)
    }

    pub fn model_params(&self) -> Result<ModelParams<f64>, CliError> {
        self.params.resolve()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
