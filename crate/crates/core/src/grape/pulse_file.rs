// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON pulse profiles:
//!
//! ```json
//! {"n_steps": N, "dt": 0.1, "u1": [...], "u2": [...],
//!  "meta": {"params": {...}, "transfer": {"initial": "+X", "target": "-X"}, "fidelity": 0.92}}
//! ```
//!
//! Floats are written in shortest round-trip form and parsed exactly.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GrapeError, Transfer};
use crate::frqme::{ModelParamsRepr, PulseSequence};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseMeta {
    pub params: ModelParamsRepr<f64>,
    pub transfer: Transfer,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseFile {
    pub n_steps: usize,
    pub dt: f64,
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
    pub meta: Option<PulseMeta>,
}

impl PulseFile {
    pub fn new(pulse: &PulseSequence<f64>, meta: Option<PulseMeta>) -> Self {
        Self {
            n_steps: pulse.n_steps(),
            dt: pulse.dt(),
            u1: pulse.u1().to_vec(),
            u2: pulse.u2().to_vec(),
            meta,
        }
    }

    pub fn pulse(&self) -> Result<PulseSequence<f64>, GrapeError> {
        if self.n_steps != self.u1.len() {
            return Err(GrapeError::InvalidConfig(format!(
                "pulse file declares {} steps but holds {}",
                self.n_steps,
                self.u1.len()
            )));
        }
        Ok(PulseSequence::new(
            self.dt,
            self.u1.clone(),
            self.u2.clone(),
        )?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pulse file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GrapeError> {
        serde_json::from_str(s).map_err(|e| GrapeError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, GrapeError> {
        let text = fs::read_to_string(path).map_err(|e| GrapeError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text).map_err(|e| match e {
            GrapeError::Parse(m) => GrapeError::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), GrapeError> {
        fs::write(path, self.to_json() + "\n").map_err(|e| GrapeError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frqme::ModelParams;
    use crate::qops::NamedState;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bit_exact_round_trip(
            dt in 1e-6f64..10.0,
            amps in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 2..40),
            fid in 0.0f64..1.0,
        ) {
            let n = amps.len() / 2;
            let pulse = PulseSequence::new(dt, amps[..n].to_vec(), amps[n..2 * n].to_vec()).unwrap();
            let meta = PulseMeta {
                params: ModelParams::<f64>::flux_qubit().to_repr(),
                transfer: Transfer::new(NamedState::PlusX, NamedState::MinusX),
                fidelity: fid,
            };
            let file = PulseFile::new(&pulse, Some(meta));
            let back = PulseFile::from_json(&file.to_json()).unwrap();
            prop_assert_eq!(back.dt.to_bits(), dt.to_bits());
            for (a, b) in back.u1.iter().chain(&back.u2).zip(file.u1.iter().chain(&file.u2)) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
            prop_assert_eq!(back.meta.unwrap().fidelity.to_bits(), fid.to_bits());
        }
    }

    #[test]
    fn schema_fields() {
        let pulse = PulseSequence::constant(2, 0.5, 1.0, 0.0).unwrap();
        let js = PulseFile::new(&pulse, None).to_json();
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        for key in ["n_steps", "dt", "u1", "u2", "meta"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(
            PulseFile::from_json(r#"{"n_steps":1,"dt":1,"u1":[0],"u2":[0],"extra":1}"#).is_err()
        );
        let bad = PulseFile::from_json(r#"{"n_steps":2,"dt":1,"u1":[0],"u2":[0]}"#).unwrap();
        assert!(bad.pulse().is_err());
    }
}
