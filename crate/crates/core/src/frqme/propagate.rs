// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::generator::StepKernel;
use super::{DynamicsError, ModelParams, PulseSequence};
use crate::qops::{uhlmann_fidelity, DensityMatrix};
use crate::scalar::Real;

/// Micro-steps per control interval unless configured otherwise.
pub const DEFAULT_SUBSTEPS: usize = 16;

/// Trace drift beyond this aborts the integration.
pub const TRACE_FAILURE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct Sample<T: Real> {
    pub t: T,
    pub rho: DensityMatrix<T>,
    pub bloch: [T; 3],
}

/// Worst-case numerical hygiene observed during an integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics<T> {
    pub max_trace_deviation: T,
    /// Largest `‖ρ − ρ†‖` produced by a raw RK4 step, before symmetrization.
    pub max_hermiticity_deviation: T,
    pub min_eigenvalue: T,
    pub micro_steps: usize,
}

impl<T: Real> Diagnostics<T> {
    fn start(rho: &DensityMatrix<T>) -> Self {
        Self {
            max_trace_deviation: rho.trace_deviation(),
            max_hermiticity_deviation: rho.matrix().hermiticity_deviation(),
            min_eigenvalue: rho.min_eigenvalue(),
            micro_steps: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Real + Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct Trajectory<T: Real> {
    pub samples: Vec<Sample<T>>,
    pub diagnostics: Diagnostics<T>,
}

impl<T: Real> Trajectory<T> {
    pub fn final_sample(&self) -> &Sample<T> {
        self.samples
            .last()
            .expect("trajectory holds the initial sample")
    }

    pub fn final_state(&self) -> DensityMatrix<T> {
        self.final_sample().rho
    }
}

/// Fixed-step RK4 over each control interval, split into `substeps` micro
/// steps. After every micro step ρ is re-symmetrized; the trace is checked
/// but never renormalized.
///
/// `observe` is called with the micro-step index, time and state, starting
/// with index 0 at `t' = 0`.
fn integrate<T, F>(
    rho0: &DensityMatrix<T>,
    pulse: &PulseSequence<T>,
    params: &ModelParams<T>,
    substeps: usize,
    mut observe: F,
) -> Result<(DensityMatrix<T>, Diagnostics<T>), DynamicsError>
where
    T: Real,
    F: FnMut(usize, T, &DensityMatrix<T>),
{
    if substeps == 0 {
        return Err(DynamicsError::InvalidPulse(
            "substeps must be at least 1".into(),
        ));
    }
    let mut diag = Diagnostics::start(rho0);
    let mut rho = *rho0.matrix();
    observe(0, T::zero(), rho0);

    let h = pulse.dt() / T::from_usize(substeps).expect("substeps fit");
    let half = h * T::lit(0.5);
    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);
    let fail_tol = T::tol(TRACE_FAILURE);

    let mut step = 0usize;
    for j in 0..pulse.n_steps() {
        let kernel = StepKernel::new(pulse.u1()[j], pulse.u2()[j], params);
        for _ in 0..substeps {
            let t = h * T::from_usize(step).expect("step index fits");
            let (p0, pm, p1) = (kernel.phase(t), kernel.phase(t + half), kernel.phase(t + h));

            let k1 = kernel.apply(&rho, p0);
            let k2 = kernel.apply(&rho.add_scaled(&k1, half), pm);
            let k3 = kernel.apply(&rho.add_scaled(&k2, half), pm);
            let k4 = kernel.apply(&rho.add_scaled(&k3, h), p1);
            let incr = k1 + (k2 + k3).scale_real(two) + k4;
            let raw = rho.add_scaled(&incr, sixth);

            step += 1;
            let t_next = h * T::from_usize(step).expect("step index fits");
            if !raw.is_finite() {
                return Err(DynamicsError::NonFinite {
                    t: t_next.to_f64_lossy(),
                });
            }
            diag.max_hermiticity_deviation = diag
                .max_hermiticity_deviation
                .max(raw.hermiticity_deviation());
            rho = raw.hermitian_part();

            let state = DensityMatrix::from_matrix_unchecked(rho);
            let dev = state.trace_deviation();
            diag.max_trace_deviation = diag.max_trace_deviation.max(dev);
            if dev > fail_tol {
                return Err(DynamicsError::IntegrationFailure {
                    t: t_next.to_f64_lossy(),
                    deviation: dev.to_f64_lossy(),
                });
            }
            diag.min_eigenvalue = diag.min_eigenvalue.min(state.min_eigenvalue());
            observe(step, t_next, &state);
        }
    }
    diag.micro_steps = step;
    Ok((DensityMatrix::from_matrix_unchecked(rho), diag))
}

/// Integrates the master equation under `pulse`, recording every
/// `sample_stride`-th micro step. The final time `T' = N·ΔT'` is always
/// sampled.
pub fn propagate<T: Real>(
    rho0: &DensityMatrix<T>,
    pulse: &PulseSequence<T>,
    params: &ModelParams<T>,
    substeps: usize,
    sample_stride: usize,
) -> Result<Trajectory<T>, DynamicsError> {
    let stride = sample_stride.max(1);
    let total = pulse.n_steps() * substeps;
    let mut samples = Vec::with_capacity(total / stride + 2);
    let (_, diagnostics) = integrate(rho0, pulse, params, substeps, |k, t, rho| {
        if k % stride == 0 || k == total {
            samples.push(Sample {
                t,
                rho: *rho,
                bloch: rho.bloch_vector(),
            });
        }
    })?;
    Ok(Trajectory {
        samples,
        diagnostics,
    })
}

/// Final state only; nothing is stored along the way.
pub fn final_state<T: Real>(
    rho0: &DensityMatrix<T>,
    pulse: &PulseSequence<T>,
    params: &ModelParams<T>,
    substeps: usize,
) -> Result<(DensityMatrix<T>, Diagnostics<T>), DynamicsError> {
    integrate(rho0, pulse, params, substeps, |_, _, _| {})
}

/// Final state and its Uhlmann fidelity against `target`.
pub fn effective_final_state<T: Real>(
    rho0: &DensityMatrix<T>,
    pulse: &PulseSequence<T>,
    params: &ModelParams<T>,
    target: &DensityMatrix<T>,
    substeps: usize,
) -> Result<(DensityMatrix<T>, T), DynamicsError> {
    let (rho, _) = final_state(rho0, pulse, params, substeps)?;
    let f = uhlmann_fidelity(target, &rho)?;
    Ok((rho, f))
}
