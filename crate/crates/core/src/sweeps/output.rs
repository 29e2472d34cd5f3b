// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! On-disk layout of a sweep run:
//!
//! ```text
//! <run dir>/
//!   index.json                 kind, shape, every point record, provenance
//!   <kind>.csv                 one row per grid point, in grid order
//!   band.csv                   pulse envelope (χ sweeps only)
//!   points/point_0000.json     pulse profile of each successful point
//!   points/point_0000_bloch.csv
//! ```
//!
//! Floats in CSV files carry 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{PointRecord, SweepError, SweepKind, SweepResult};
use crate::frqme::{propagate, ModelParams, PulseSequence, Trajectory};
use crate::grape::{PulseFile, PulseMeta, Transfer};

/// Formats with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt17(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), fmt17)
}

fn io_err(path: &Path, e: std::io::Error) -> SweepError {
    SweepError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), SweepError> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

/// Current UTC time in RFC 3339, the format of every `created` field.
pub fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// `<root>/<UTC timestamp>_<label>`.
pub fn run_dir_name(root: &Path, label: &str) -> PathBuf {
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ");
    let label: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    root.join(format!("{stamp}_{label}"))
}

/// Creates `dir`, refusing to reuse an existing one unless `force` is set.
pub fn prepare_dir(dir: &Path, force: bool) -> Result<(), SweepError> {
    if dir.exists() && !force {
        return Err(SweepError::AlreadyExists(dir.display().to_string()));
    }
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

/// Bloch trajectory as CSV with columns `t,x,y,z,purity`.
pub fn trajectory_csv(traj: &Trajectory<f64>) -> String {
    let mut s = String::from("t,x,y,z,purity\n");
    for smp in &traj.samples {
        let [x, y, z] = smp.bloch;
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt17(smp.t),
            fmt17(x),
            fmt17(y),
            fmt17(z),
            fmt17(smp.rho.purity())
        );
    }
    s
}

/// Propagates `pulse` from the transfer's initial state and writes the
/// trajectory, sampled every `stride` micro steps, to `path`.
pub fn bloch_trajectory_export(
    transfer: Transfer,
    pulse: &PulseSequence<f64>,
    params: &ModelParams<f64>,
    substeps: usize,
    stride: usize,
    path: &Path,
) -> Result<Trajectory<f64>, SweepError> {
    let traj = propagate(&transfer.initial.density(), pulse, params, substeps, stride)
        .map_err(crate::grape::GrapeError::from)?;
    write_file(path, &trajectory_csv(&traj))?;
    Ok(traj)
}

fn summary_csv(result: &SweepResult) -> String {
    let header = match result.kind {
        SweepKind::Time => "total_time,fidelity,status",
        SweepKind::Detuning => "delta_minus,delta_plus,fidelity,status",
        SweepKind::Chi => "chi,fidelity,status",
        SweepKind::Contour => "chi,dt,total_time,fidelity,status",
    };
    let mut s = format!("{header}\n");
    for p in &result.points {
        let f = opt17(p.fidelity);
        let row = match result.kind {
            SweepKind::Time => format!("{},{f},{}", fmt17(p.total_time), p.status),
            SweepKind::Detuning => format!(
                "{},{},{f},{}",
                fmt17(p.params.delta_minus()),
                fmt17(p.params.delta_plus()),
                p.status
            ),
            SweepKind::Chi => format!("{},{f},{}", fmt17(p.params.chi()), p.status),
            SweepKind::Contour => format!(
                "{},{},{},{f},{}",
                fmt17(p.params.chi()),
                fmt17(p.dt),
                fmt17(p.total_time),
                p.status
            ),
        };
        s.push_str(&row);
        s.push('\n');
    }
    s
}

fn band_csv(result: &SweepResult) -> Option<String> {
    let b = result.band.as_ref()?;
    let mut s = String::from("step,u1_min,u1_max,u2_min,u2_max\n");
    for j in 0..b.u1_min.len() {
        let _ = writeln!(
            s,
            "{j},{},{},{},{}",
            fmt17(b.u1_min[j]),
            fmt17(b.u1_max[j]),
            fmt17(b.u2_min[j]),
            fmt17(b.u2_max[j])
        );
    }
    Some(s)
}

#[derive(Serialize)]
struct IndexEntry<'a> {
    #[serde(flatten)]
    record: &'a PointRecord,
    pulse_file: Option<String>,
    trajectory_file: Option<String>,
}

#[derive(Serialize)]
struct Index<'a> {
    kind: SweepKind,
    reoptimize: bool,
    shape: &'a [usize],
    points: Vec<IndexEntry<'a>>,
    band: &'a Option<super::Band>,
    provenance: &'a super::Provenance,
}

fn point_stem(i: usize) -> String {
    format!("points/point_{i:04}")
}

/// Writes every artifact of `result` into `dir` (see the module docs).
pub fn write_result(result: &SweepResult, dir: &Path, force: bool) -> Result<(), SweepError> {
    prepare_dir(dir, force)?;
    let points_dir = dir.join("points");
    fs::create_dir_all(&points_dir).map_err(|e| io_err(&points_dir, e))?;

    let transfer = result.provenance.spec.transfer;
    let mut entries = Vec::with_capacity(result.points.len());
    for p in &result.points {
        let stem = point_stem(p.index);
        let mut entry = IndexEntry {
            record: p,
            pulse_file: None,
            trajectory_file: None,
        };
        if let (Some(pulse), Some(f)) = (&p.pulse, p.fidelity) {
            let meta = PulseMeta {
                params: p.params.to_repr(),
                transfer,
                fidelity: f,
            };
            let name = format!("{stem}.json");
            PulseFile::new(pulse, Some(meta)).write(&dir.join(&name))?;
            entry.pulse_file = Some(name);
        }
        if let Some(traj) = &p.trajectory {
            let name = format!("{stem}_bloch.csv");
            write_file(&dir.join(&name), &trajectory_csv(traj))?;
            entry.trajectory_file = Some(name);
        }
        entries.push(entry);
    }

    write_file(
        &dir.join(format!("{}.csv", result.kind.file_stem())),
        &summary_csv(result),
    )?;
    if let Some(b) = band_csv(result) {
        write_file(&dir.join("band.csv"), &b)?;
    }
    let index = Index {
        kind: result.kind,
        reoptimize: result.reoptimize,
        shape: &result.shape,
        points: entries,
        band: &result.band,
        provenance: &result.provenance,
    };
    let json = serde_json::to_string_pretty(&index).expect("index serializes");
    write_file(&dir.join("index.json"), &(json + "\n"))
}
