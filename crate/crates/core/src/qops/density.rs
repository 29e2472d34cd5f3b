// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{hermitian_eigenvalues, pauli, CMat2, Pauli, QopsError, StateVector};
use crate::scalar::Real;

/// A validated single-qubit density matrix: Hermitian with unit trace.
///
/// Positivity is monitored through [`DensityMatrix::min_eigenvalue`] rather
/// than enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(
    bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>"),
    try_from = "CMat2<T>",
    into = "CMat2<T>"
)]
pub struct DensityMatrix<T: Real>(CMat2<T>);

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity and unit trace to 1e-12.
    pub fn new(m: CMat2<T>) -> Result<Self, QopsError> {
        let tol = T::tol(1e-12);
        let dev = m.hermiticity_deviation();
        if !(dev < tol) {
            return Err(QopsError::NotHermitian {
                deviation: dev.to_f64_lossy(),
            });
        }
        let tr = m.trace();
        if !((tr.re - T::one()).abs() < tol && tr.im.abs() < tol) {
            return Err(QopsError::BadTrace {
                trace: tr.re.to_f64_lossy(),
            });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix without checks. The integrator asserts its own,
    /// looser, invariants on intermediate states.
    pub(crate) fn from_matrix_unchecked(m: CMat2<T>) -> Self {
        Self(m)
    }

    /// `diag(p0, 1 − p0)`.
    pub fn diagonal(p0: T) -> Self {
        Self(CMat2::diag(p0, T::one() - p0))
    }

    /// `I/2`
    pub fn maximally_mixed() -> Self {
        Self::diagonal(T::lit(0.5))
    }

    /// `ρ = ½(I + xσx + yσy + zσz)` for `|r| ≤ 1`.
    pub fn from_bloch(r: [T; 3]) -> Result<Self, QopsError> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm > T::one() + T::tol(1e-12) {
            return Err(QopsError::OutsideBlochBall {
                x: r[0].to_f64_lossy(),
                y: r[1].to_f64_lossy(),
                z: r[2].to_f64_lossy(),
            });
        }
        Ok(Self(Self::bloch_matrix(r)))
    }

    fn bloch_matrix(r: [T; 3]) -> CMat2<T> {
        let half = T::lit(0.5);
        let m = CMat2::identity()
            + pauli(Pauli::X).scale_real(r[0])
            + pauli(Pauli::Y).scale_real(r[1])
            + pauli(Pauli::Z).scale_real(r[2]);
        m.scale_real(half)
    }

    pub fn matrix(&self) -> &CMat2<T> {
        &self.0
    }

    pub fn into_matrix(self) -> CMat2<T> {
        self.0
    }

    /// `(Tr ρσx, Tr ρσy, Tr ρσz)`
    pub fn bloch_vector(&self) -> [T; 3] {
        let m = &self.0;
        let two = T::lit(2.0);
        [two * m.a01.re, -two * m.a01.im, m.a00.re - m.a11.re]
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> T {
        (self.0 * self.0).trace().re
    }

    pub fn min_eigenvalue(&self) -> T {
        hermitian_eigenvalues(&self.0).0
    }

    /// Populations `(ρ00, ρ11)`.
    pub fn populations(&self) -> (T, T) {
        (self.0.a00.re, self.0.a11.re)
    }

    pub fn trace_deviation(&self) -> T {
        let tr = self.0.trace();
        (tr - Complex::new(T::one(), T::zero())).norm()
    }

    /// Errors when an eigenvalue falls below `-eps`.
    pub fn check_positive(&self, which: &'static str, eps: T) -> Result<(), QopsError> {
        let lo = self.min_eigenvalue();
        if lo < -eps {
            return Err(QopsError::NotPositive {
                which,
                eigenvalue: lo.to_f64_lossy(),
                eps: eps.to_f64_lossy(),
            });
        }
        Ok(())
    }
}

impl<T: Real> TryFrom<CMat2<T>> for DensityMatrix<T> {
    type Error = QopsError;
    fn try_from(m: CMat2<T>) -> Result<Self, Self::Error> {
        Self::new(m)
    }
}

impl<T: Real> From<DensityMatrix<T>> for CMat2<T> {
    fn from(d: DensityMatrix<T>) -> Self {
        d.0
    }
}

/// `ρ = |ψ⟩⟨ψ|` for a normalized amplitude pair.
pub fn density_from_state<T: Real>(psi: &StateVector<T>) -> Result<DensityMatrix<T>, QopsError> {
    let norm_sqr = psi.norm_sqr();
    if !((norm_sqr - T::one()).abs() < T::tol(1e-12)) {
        return Err(QopsError::NotNormalized {
            norm_sqr: norm_sqr.to_f64_lossy(),
        });
    }
    let a = psi.amplitudes();
    Ok(DensityMatrix(CMat2::outer(a, a)))
}
