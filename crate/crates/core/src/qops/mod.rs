// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed 2×2 complex operator algebra for a single qubit.
//!
//! The ladder operators follow the unnormalized convention
//! `σ± = σx ± iσy`, so `σ+ = 2|0⟩⟨1|` and `σ+σ− = diag(4, 0)`. Drive
//! amplitudes carry a compensating factor of 1/4 (see [`crate::frqme`]).

mod density;
mod fidelity;
mod states;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;

pub use density::{density_from_state, DensityMatrix};
pub use fidelity::uhlmann_fidelity;
pub use states::{NamedState, StateVector};

/// Tolerance used when checking for negative eigenvalues.
pub const POSITIVITY_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QopsError {
    #[error("unknown operator label {0:?} (expected one of x, y, z, +, -, i)")]
    UnknownPauli(String),
    #[error("unknown state label {label:?}; valid labels: {valid}")]
    UnknownState { label: String, valid: String },
    #[error("state vector is not normalized: norm² = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("matrix is not Hermitian: deviation {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("{which} density matrix has eigenvalue {eigenvalue:e} below -{eps:e}")]
    NotPositive {
        which: &'static str,
        eigenvalue: f64,
        eps: f64,
    },
    #[error("fidelity {value} outside [0, 1]")]
    FidelityOutOfRange { value: f64 },
    #[error("Bloch vector ({x}, {y}, {z}) lies outside the unit ball")]
    OutsideBlochBall { x: f64, y: f64, z: f64 },
}

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct CMat2<T> {
    pub a00: Complex<T>,
    pub a01: Complex<T>,
    pub a10: Complex<T>,
    pub a11: Complex<T>,
}

impl<T: Real> CMat2<T> {
    pub const fn new(a00: Complex<T>, a01: Complex<T>, a10: Complex<T>, a11: Complex<T>) -> Self {
        Self { a00, a01, a10, a11 }
    }

    pub fn from_real(a00: T, a01: T, a10: T, a11: T) -> Self {
        let c = |x| Complex::new(x, T::zero());
        Self::new(c(a00), c(a01), c(a10), c(a11))
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diag(d0: T, d1: T) -> Self {
        Self::from_real(d0, T::zero(), T::zero(), d1)
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: [Complex<T>; 2], v: [Complex<T>; 2]) -> Self {
        Self::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.a00.conj(),
            self.a10.conj(),
            self.a01.conj(),
            self.a11.conj(),
        )
    }

    pub fn trace(&self) -> Complex<T> {
        self.a00 + self.a11
    }

    pub fn det(&self) -> Complex<T> {
        self.a00 * self.a11 - self.a01 * self.a10
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.a00 * s, self.a01 * s, self.a10 * s, self.a11 * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::new(self.a00 * s, self.a01 * s, self.a10 * s, self.a11 * s)
    }

    /// `self + s·other`, the workhorse of the integrator.
    #[inline]
    pub fn add_scaled(&self, other: &Self, s: T) -> Self {
        Self::new(
            self.a00 + other.a00 * s,
            self.a01 + other.a01 * s,
            self.a10 + other.a10 * s,
            self.a11 + other.a11 * s,
        )
    }

    pub fn entries(&self) -> [Complex<T>; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.entries()
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// `max |a_ij − b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Deviation from Hermiticity, `max |ρ − ρ†|`.
    pub fn hermiticity_deviation(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_real(T::lit(0.5))
    }

    pub fn is_finite(&self) -> bool {
        self.entries()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T: Real> Add for CMat2<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.a00 + r.a00,
            self.a01 + r.a01,
            self.a10 + r.a10,
            self.a11 + r.a11,
        )
    }
}

impl<T: Real> AddAssign for CMat2<T> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Real> Sub for CMat2<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.a00 - r.a00,
            self.a01 - r.a01,
            self.a10 - r.a10,
            self.a11 - r.a11,
        )
    }
}

impl<T: Real> Neg for CMat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a00, -self.a01, -self.a10, -self.a11)
    }
}

impl<T: Real> Mul for CMat2<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.a00 * r.a00 + self.a01 * r.a10,
            self.a00 * r.a01 + self.a01 * r.a11,
            self.a10 * r.a00 + self.a11 * r.a10,
            self.a10 * r.a01 + self.a11 * r.a11,
        )
    }
}

impl<T: Real> Mul<Complex<T>> for CMat2<T> {
    type Output = Self;
    fn mul(self, s: Complex<T>) -> Self {
        self.scale(s)
    }
}

/// Operator labels accepted by [`pauli`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
    /// `σ+ = σx + iσy`
    Plus,
    /// `σ− = σx − iσy`
    Minus,
}

impl FromStr for Pauli {
    type Err = QopsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "i" | "I" | "id" | "identity" => Ok(Pauli::I),
            "x" | "X" => Ok(Pauli::X),
            "y" | "Y" => Ok(Pauli::Y),
            "z" | "Z" => Ok(Pauli::Z),
            "+" | "plus" => Ok(Pauli::Plus),
            "-" | "\u{2212}" | "minus" => Ok(Pauli::Minus),
            other => Err(QopsError::UnknownPauli(other.to_string())),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "i",
            Pauli::X => "x",
            Pauli::Y => "y",
            Pauli::Z => "z",
            Pauli::Plus => "+",
            Pauli::Minus => "-",
        };
        f.write_str(s)
    }
}

/// Pauli matrices and the (unnormalized) ladder operators.
pub fn pauli<T: Real>(label: Pauli) -> CMat2<T> {
    let (o, l) = (T::zero(), T::one());
    let two = T::lit(2.0);
    match label {
        Pauli::I => CMat2::identity(),
        Pauli::X => CMat2::from_real(o, l, l, o),
        Pauli::Y => CMat2::new(
            Complex::new(o, o),
            Complex::new(o, -l),
            Complex::new(o, l),
            Complex::new(o, o),
        ),
        Pauli::Z => CMat2::from_real(l, o, o, -l),
        Pauli::Plus => CMat2::from_real(o, two, o, o),
        Pauli::Minus => CMat2::from_real(o, o, two, o),
    }
}

/// `AB − BA`
pub fn commutator<T: Real>(a: &CMat2<T>, b: &CMat2<T>) -> CMat2<T> {
    *a * *b - *b * *a
}

/// `AB + BA`
pub fn anticommutator<T: Real>(a: &CMat2<T>, b: &CMat2<T>) -> CMat2<T> {
    *a * *b + *b * *a
}

/// Real eigenvalues `(λ_min, λ_max)` of the Hermitian part of `m`.
pub fn hermitian_eigenvalues<T: Real>(m: &CMat2<T>) -> (T, T) {
    let h = m.hermitian_part();
    let half = T::lit(0.5);
    let mean = (h.a00.re + h.a11.re) * half;
    let diff = (h.a00.re - h.a11.re) * half;
    let r = (diff * diff + h.a01.norm_sqr()).sqrt();
    (mean - r, mean + r)
}
