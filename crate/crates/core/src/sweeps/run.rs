// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AxisParam, SweepError, SweepSpec};
use crate::frqme::{propagate, Diagnostics, ModelParams, PulseSequence, Trajectory};
use crate::grape::{
    initial_pulse, optimize, optimize_from, Convergence, GrapeConfig, GrapeError, InitialGuess,
    Problem,
};
use crate::qops::uhlmann_fidelity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Time,
    Detuning,
    Chi,
    Contour,
}

impl SweepKind {
    pub fn file_stem(self) -> &'static str {
        match self {
            SweepKind::Time => "sweep_time",
            SweepKind::Detuning => "sweep_detuning",
            SweepKind::Chi => "sweep_chi",
            SweepKind::Contour => "contour",
        }
    }

    fn default_reoptimize(self) -> bool {
        !matches!(self, SweepKind::Detuning)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Ok,
    Failed,
}

impl std::fmt::Display for PointStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PointStatus::Ok => "ok",
            PointStatus::Failed => "failed",
        })
    }
}

/// Outcome at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub index: usize,
    /// One value per sweep axis, in axis order.
    pub coords: Vec<f64>,
    pub n_steps: usize,
    pub dt: f64,
    pub total_time: f64,
    pub params: ModelParams<f64>,
    pub status: PointStatus,
    pub fidelity: Option<f64>,
    pub iterations: Option<usize>,
    pub convergence: Option<Convergence>,
    pub final_bloch: Option<[f64; 3]>,
    pub final_purity: Option<f64>,
    pub diagnostics: Option<Diagnostics<f64>>,
    /// Exact first iterate, so the point can be re-optimized in isolation.
    pub initial_guess: Option<InitialGuess>,
    pub error: Option<String>,
    #[serde(skip)]
    pub pulse: Option<PulseSequence<f64>>,
    #[serde(skip)]
    pub trajectory: Option<Trajectory<f64>>,
}

impl PointRecord {
    pub fn is_ok(&self) -> bool {
        self.status == PointStatus::Ok
    }

    /// Settings that reproduce this point with [`optimize`].
    pub fn grape_config(&self, base: &GrapeConfig) -> GrapeConfig {
        GrapeConfig {
            n_steps: self.n_steps,
            dt: self.dt,
            initial_guess: self.initial_guess.clone().unwrap_or_default(),
            ..base.clone()
        }
    }
}

/// Pointwise min/max of every optimized amplitude across a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub u1_min: Vec<f64>,
    pub u1_max: Vec<f64>,
    pub u2_min: Vec<f64>,
    pub u2_max: Vec<f64>,
}

impl Band {
    fn from_pulses<'a>(pulses: impl IntoIterator<Item = &'a PulseSequence<f64>>) -> Option<Self> {
        let mut band: Option<Band> = None;
        for p in pulses {
            match &mut band {
                None => {
                    band = Some(Band {
                        u1_min: p.u1().to_vec(),
                        u1_max: p.u1().to_vec(),
                        u2_min: p.u2().to_vec(),
                        u2_max: p.u2().to_vec(),
                    })
                }
                Some(b) => {
                    if p.n_steps() != b.u1_min.len() {
                        return None;
                    }
                    for j in 0..p.n_steps() {
                        b.u1_min[j] = b.u1_min[j].min(p.u1()[j]);
                        b.u1_max[j] = b.u1_max[j].max(p.u1()[j]);
                        b.u2_min[j] = b.u2_min[j].min(p.u2()[j]);
                        b.u2_max[j] = b.u2_max[j].max(p.u2()[j]);
                    }
                }
            }
        }
        band
    }

    pub fn contains(&self, p: &PulseSequence<f64>) -> bool {
        p.n_steps() == self.u1_min.len()
            && (0..p.n_steps()).all(|j| {
                (self.u1_min[j]..=self.u1_max[j]).contains(&p.u1()[j])
                    && (self.u2_min[j]..=self.u2_max[j]).contains(&p.u2()[j])
            })
    }
}

/// Enough context to re-run any point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub spec: SweepSpec,
    pub version: String,
    pub seed: u64,
    /// The only time-dependent field of any output.
    pub created: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub reoptimize: bool,
    /// Points per axis, in axis order. Records are stored row-major.
    pub shape: Vec<usize>,
    pub points: Vec<PointRecord>,
    pub band: Option<Band>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn fidelities(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.fidelity).collect()
    }

    /// The successful point of highest fidelity; ties go to the earliest.
    pub fn argmax(&self) -> Option<&PointRecord> {
        self.points
            .iter()
            .filter(|p| p.is_ok())
            .fold(None, |best: Option<&PointRecord>, p| match best {
                Some(b) if b.fidelity >= p.fidelity => Some(b),
                _ => Some(p),
            })
    }

    /// Fidelities as a row-major matrix over the first two axes.
    pub fn matrix(&self) -> Vec<Vec<Option<f64>>> {
        let cols = self.shape.get(1).copied().unwrap_or(self.points.len());
        self.points
            .chunks(cols.max(1))
            .map(|row| row.iter().map(|p| p.fidelity).collect())
            .collect()
    }
}

/// Physics and discretization at one grid point.
#[derive(Debug, Clone)]
struct Point {
    coords: Vec<f64>,
    n_steps: usize,
    dt: f64,
    params: ModelParams<f64>,
}

fn build_points(spec: &SweepSpec) -> Result<(Vec<usize>, Vec<Point>), SweepError> {
    let grids: Vec<Vec<f64>> = spec.axes.iter().map(|a| a.values()).collect();
    let shape: Vec<usize> = grids.iter().map(Vec::len).collect();
    let total: usize = shape.iter().product();
    let mut points = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut coords = vec![0.0; grids.len()];
        for (k, g) in grids.iter().enumerate().rev() {
            coords[k] = g[rem % g.len()];
            rem /= g.len();
        }
        let mut p = Point {
            coords: coords.clone(),
            n_steps: spec.grape.n_steps,
            dt: spec.grape.dt,
            params: spec.params,
        };
        for (axis, v) in spec.axes.iter().zip(&coords) {
            match axis.param {
                AxisParam::Dt => p.dt = *v,
                AxisParam::NSteps => p.n_steps = *v as usize,
                AxisParam::DeltaMinus => p.params = p.params.with_delta_minus(*v)?,
                AxisParam::Chi => p.params = p.params.with_chi(*v)?,
            }
        }
        points.push(p);
    }
    Ok((shape, points))
}

fn failed(index: usize, pt: &Point, seed: Option<InitialGuess>, e: &GrapeError) -> PointRecord {
    PointRecord {
        index,
        coords: pt.coords.clone(),
        n_steps: pt.n_steps,
        dt: pt.dt,
        total_time: pt.dt * pt.n_steps as f64,
        params: pt.params,
        status: PointStatus::Failed,
        fidelity: None,
        iterations: None,
        convergence: None,
        final_bloch: None,
        final_purity: None,
        diagnostics: None,
        initial_guess: seed,
        error: Some(e.to_string()),
        pulse: None,
        trajectory: None,
    }
}

fn succeeded(
    index: usize,
    pt: &Point,
    fidelity: f64,
    pulse: PulseSequence<f64>,
    trajectory: Trajectory<f64>,
    opt: Option<(usize, Convergence, InitialGuess)>,
) -> PointRecord {
    let last = trajectory.final_sample();
    let (iterations, convergence, initial_guess) = match opt {
        Some((i, c, g)) => (Some(i), Some(c), Some(g)),
        None => (None, None, None),
    };
    PointRecord {
        index,
        coords: pt.coords.clone(),
        n_steps: pt.n_steps,
        dt: pt.dt,
        total_time: pulse.total_time(),
        params: pt.params,
        status: PointStatus::Ok,
        fidelity: Some(fidelity),
        iterations,
        convergence,
        final_bloch: Some(last.bloch),
        final_purity: Some(last.rho.purity()),
        diagnostics: Some(trajectory.diagnostics),
        initial_guess,
        error: None,
        pulse: Some(pulse),
        trajectory: Some(trajectory),
    }
}

fn optimize_point(
    spec: &SweepSpec,
    index: usize,
    pt: &Point,
    prev: Option<&PulseSequence<f64>>,
) -> PointRecord {
    let cfg = GrapeConfig {
        n_steps: pt.n_steps,
        dt: pt.dt,
        ..spec.grape.clone()
    };
    let problem = Problem::for_transfer(spec.transfer, pt.params, cfg.substeps);
    let seed = match prev {
        Some(p) => p
            .resampled(pt.n_steps, pt.dt)
            .map(|s| s.clamped(cfg.u_max))
            .map_err(GrapeError::from),
        None => initial_pulse(&cfg, &problem),
    };
    let seed = match seed {
        Ok(s) => s,
        Err(e) => return failed(index, pt, None, &e),
    };
    let guess = InitialGuess::Pulse {
        u1: seed.u1().to_vec(),
        u2: seed.u2().to_vec(),
    };
    match optimize_from(&cfg, &problem, seed) {
        Ok(rep) => succeeded(
            index,
            pt,
            rep.final_fidelity,
            rep.pulse,
            rep.trajectory,
            Some((rep.iterations, rep.convergence, guess)),
        ),
        Err(e) => failed(index, pt, Some(guess), &e),
    }
}

fn evaluate_point(
    spec: &SweepSpec,
    index: usize,
    pt: &Point,
    pulse: &PulseSequence<f64>,
) -> PointRecord {
    let problem = Problem::for_transfer(spec.transfer, pt.params, spec.grape.substeps);
    let run = || -> Result<_, GrapeError> {
        let traj = propagate(
            &problem.rho0,
            pulse,
            &problem.params,
            problem.substeps,
            spec.grape.sample_stride,
        )?;
        let f = uhlmann_fidelity(&problem.target, &traj.final_state())?;
        Ok((f, traj))
    };
    match run() {
        Ok((f, traj)) => succeeded(index, pt, f, pulse.clone(), traj, None),
        Err(e) => failed(index, pt, None, &e),
    }
}

/// Runs each chain in order, seeding every point with its predecessor's
/// optimum. Chains run concurrently.
fn run_chains(
    spec: &SweepSpec,
    points: &[Point],
    chains: Vec<(Option<PulseSequence<f64>>, Vec<usize>)>,
) -> Vec<PointRecord> {
    let mut out: Vec<PointRecord> = chains
        .into_par_iter()
        .flat_map_iter(|(seed, chain)| {
            let mut prev = seed;
            let mut records = Vec::with_capacity(chain.len());
            for i in chain {
                let rec = optimize_point(spec, i, &points[i], prev.as_ref());
                if spec.chain && rec.pulse.is_some() {
                    prev = rec.pulse.clone();
                }
                records.push(rec);
            }
            records
        })
        .collect();
    out.sort_by_key(|r| r.index);
    out
}

fn singletons(n: usize) -> Vec<(Option<PulseSequence<f64>>, Vec<usize>)> {
    (0..n).map(|i| (None, vec![i])).collect()
}

fn with_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SweepError::InvalidSpec(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn check_axes(
    spec: &SweepSpec,
    kind: SweepKind,
    allowed: &[&[AxisParam]],
) -> Result<(), SweepError> {
    spec.validate()?;
    let got: Vec<AxisParam> = spec.axes.iter().map(|a| a.param).collect();
    if allowed.contains(&got.as_slice()) {
        Ok(())
    } else {
        let names: Vec<&str> = got.iter().map(|p| p.name()).collect();
        Err(SweepError::InvalidSpec(format!(
            "{} sweep cannot use axes [{}]",
            kind.file_stem(),
            names.join(", ")
        )))
    }
}

fn finish(
    spec: &SweepSpec,
    kind: SweepKind,
    reoptimize: bool,
    shape: Vec<usize>,
    points: Vec<PointRecord>,
    band: Option<Band>,
) -> SweepResult {
    SweepResult {
        kind,
        reoptimize,
        shape,
        points,
        band,
        provenance: Provenance {
            spec: spec.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: spec.grape.seed,
            created: super::timestamp(),
        },
    }
}

fn fixed_pulse(spec: &SweepSpec) -> Result<PulseSequence<f64>, SweepError> {
    if let Some(p) = &spec.fixed_pulse {
        return Ok(p.clone());
    }
    let params = spec.params.with_delta_minus(0.0)?;
    let problem = Problem::for_transfer(spec.transfer, params, spec.grape.substeps);
    Ok(optimize(&spec.grape, &problem)?.pulse)
}

/// Best fidelity as a function of total evolution time, varying either the
/// control interval at fixed `N` or `N` at fixed control interval.
pub fn sweep_time(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let kind = SweepKind::Time;
    check_axes(spec, kind, &[&[AxisParam::Dt], &[AxisParam::NSteps]])?;
    let reopt = spec.reoptimize.unwrap_or(kind.default_reoptimize());
    if !reopt {
        return Err(SweepError::InvalidSpec(
            "the time sweep always re-optimizes".into(),
        ));
    }
    let (shape, points) = build_points(spec)?;
    let chains = if spec.chain {
        vec![(None, (0..points.len()).collect())]
    } else {
        singletons(points.len())
    };
    let records = with_pool(spec.workers, || run_chains(spec, &points, chains))?;
    Ok(finish(spec, kind, reopt, shape, records, None))
}

/// Fidelity over the co-rotating detuning. By default one pulse, optimized
/// at zero detuning, is propagated at every point.
pub fn sweep_detuning(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let kind = SweepKind::Detuning;
    check_axes(spec, kind, &[&[AxisParam::DeltaMinus]])?;
    let reopt = spec.reoptimize.unwrap_or(kind.default_reoptimize());
    let (shape, points) = build_points(spec)?;
    let records = with_pool(spec.workers, || -> Result<_, SweepError> {
        if !reopt {
            let pulse = fixed_pulse(spec)?;
            if pulse.n_steps() != spec.grape.n_steps {
                return Err(GrapeError::DimensionMismatch {
                    expected: spec.grape.n_steps,
                    found: pulse.n_steps(),
                }
                .into());
            }
            return Ok(points
                .par_iter()
                .enumerate()
                .map(|(i, pt)| evaluate_point(spec, i, pt, &pulse))
                .collect());
        }
        if !spec.chain {
            return Ok(run_chains(spec, &points, singletons(points.len())));
        }
        // chain outward from the point nearest zero detuning
        let centre = points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.coords[0].abs().total_cmp(&b.1.coords[0].abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let first = optimize_point(spec, centre, &points[centre], None);
        let seed = first.pulse.clone();
        let mut rest = run_chains(
            spec,
            &points,
            vec![
                (seed.clone(), (0..centre).rev().collect()),
                (seed, (centre + 1..points.len()).collect()),
            ],
        );
        rest.push(first);
        rest.sort_by_key(|r| r.index);
        Ok(rest)
    })??;
    Ok(finish(spec, kind, reopt, shape, records, None))
}

/// Re-optimized fidelity and pulse over the correlation time, with the
/// envelope of all optimized pulses.
pub fn sweep_chi(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let kind = SweepKind::Chi;
    check_axes(spec, kind, &[&[AxisParam::Chi]])?;
    if spec.axes[0].spacing != super::Spacing::Log {
        return Err(SweepError::InvalidSpec(
            "the chi axis must be log-spaced".into(),
        ));
    }
    let reopt = spec.reoptimize.unwrap_or(kind.default_reoptimize());
    let (shape, points) = build_points(spec)?;
    let records = with_pool(spec.workers, || -> Result<_, SweepError> {
        if !reopt {
            let pulse = fixed_pulse(spec)?;
            return Ok(points
                .par_iter()
                .enumerate()
                .map(|(i, pt)| evaluate_point(spec, i, pt, &pulse))
                .collect());
        }
        let chains = if spec.chain {
            vec![(None, (0..points.len()).collect())]
        } else {
            singletons(points.len())
        };
        Ok(run_chains(spec, &points, chains))
    })??;
    let band = Band::from_pulses(records.iter().filter_map(|r| r.pulse.as_ref()));
    Ok(finish(spec, kind, reopt, shape, records, band))
}

/// Fidelity over correlation time × control interval at fixed `N`. Rows
/// (one per `χ`) run concurrently and are chained along the interval axis.
pub fn contour_chi_time(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let kind = SweepKind::Contour;
    check_axes(spec, kind, &[&[AxisParam::Chi, AxisParam::Dt]])?;
    if spec.axes[0].spacing != super::Spacing::Log {
        return Err(SweepError::InvalidSpec(
            "the chi axis must be log-spaced".into(),
        ));
    }
    let reopt = spec.reoptimize.unwrap_or(kind.default_reoptimize());
    if !reopt {
        return Err(SweepError::InvalidSpec(
            "the contour always re-optimizes".into(),
        ));
    }
    let (shape, points) = build_points(spec)?;
    let cols = shape[1];
    let chains = if spec.chain {
        (0..shape[0])
            .map(|r| (None, (r * cols..(r + 1) * cols).collect()))
            .collect()
    } else {
        singletons(points.len())
    };
    let records = with_pool(spec.workers, || run_chains(spec, &points, chains))?;
    Ok(finish(spec, kind, reopt, shape, records, None))
}
