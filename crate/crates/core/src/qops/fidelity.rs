// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use super::{DensityMatrix, QopsError, POSITIVITY_EPS};
use crate::scalar::Real;

/// Uhlmann fidelity `[Tr √(√ρT ρf √ρT)]²`.
///
/// For qubits this reduces to `Tr(ρT ρf) + 2√(det ρT · det ρf)`. Results that
/// overshoot `[0, 1]` by less than 1e-10 are clamped; larger excursions and
/// eigenvalues below `-POSITIVITY_EPS` are reported as errors.
pub fn uhlmann_fidelity<T: Real>(
    target: &DensityMatrix<T>,
    state: &DensityMatrix<T>,
) -> Result<T, QopsError> {
    let eps = T::tol(POSITIVITY_EPS);
    target.check_positive("target", eps)?;
    state.check_positive("final", eps)?;

    let overlap = (*target.matrix() * *state.matrix()).trace().re;
    let det_t = target.matrix().det().re.max(T::zero());
    let det_f = state.matrix().det().re.max(T::zero());
    let f = overlap + T::lit(2.0) * (det_t * det_f).sqrt();

    let slack = T::tol(1e-10);
    if f < -slack || f > T::one() + slack || !f.is_finite() {
        return Err(QopsError::FidelityOutOfRange {
            value: f.to_f64_lossy(),
        });
    }
    Ok(f.max(T::zero()).min(T::one()))
}
