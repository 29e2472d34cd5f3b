// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{spectral_density, DynamicsError};
use crate::scalar::Real;

/// Switches for the individual dissipation channels.
///
/// All channels are on for physical runs. Turning them off yields the
/// closed-system limit used by the analytic Rabi checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Channels {
    /// Bath-induced relaxation, rate `χ`.
    pub environment: bool,
    /// Drive-induced Lindblad pair, rate `2|α'|²β`.
    pub did_lindblad: bool,
    /// Drive-induced double-commutator terms, rate `Re(α'²)β2`.
    pub did_double_commutator: bool,
}

impl Default for Channels {
    fn default() -> Self {
        Self::all()
    }
}

impl Channels {
    pub const fn all() -> Self {
        Self {
            environment: true,
            did_lindblad: true,
            did_double_commutator: true,
        }
    }

    pub const fn none() -> Self {
        Self {
            environment: false,
            did_lindblad: false,
            did_double_commutator: false,
        }
    }

    pub const fn did_only() -> Self {
        Self {
            environment: false,
            did_lindblad: true,
            did_double_commutator: true,
        }
    }

    pub fn is_closed(&self) -> bool {
        !(self.environment || self.did_lindblad || self.did_double_commutator)
    }
}

/// Dimensionless model constants, all scaled by the system–bath coupling.
///
/// `beta1 = J(Δ+')` and `beta2 = J(Δ−')` are derived on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "ModelParamsRepr<T>",
    into = "ModelParamsRepr<T>",
    bound(
        serialize = "T: Real + Serialize",
        deserialize = "T: Real + Deserialize<'de>"
    )
)]
pub struct ModelParams<T: Real> {
    omega_ratio: T,
    delta_minus: T,
    delta_plus: T,
    chi: T,
    p1: T,
    p2: T,
    channels: Channels,
    beta1: T,
    beta2: T,
}

/// Serialized form of [`ModelParams`]; the spectral weights are not stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParamsRepr<T> {
    pub omega_ratio: T,
    pub delta_minus: T,
    pub delta_plus: T,
    pub chi: T,
    pub p1: T,
    pub p2: T,
    #[serde(default)]
    pub channels: Channels,
}

impl<T: Real> ModelParams<T> {
    /// Builds a parameter set from the Zeeman ratio and detuning; the
    /// counter-rotating frequency is `Δ−' + 2Ω'` and `p2 = 1 − p1`.
    pub fn new(omega_ratio: T, delta_minus: T, chi: T, p1: T) -> Result<Self, DynamicsError> {
        let two = T::lit(2.0);
        Self::from_parts(
            omega_ratio,
            delta_minus,
            delta_minus + two * omega_ratio,
            chi,
            p1,
            T::one() - p1,
        )
    }

    pub fn from_parts(
        omega_ratio: T,
        delta_minus: T,
        delta_plus: T,
        chi: T,
        p1: T,
        p2: T,
    ) -> Result<Self, DynamicsError> {
        let bad = |msg: String| Err(DynamicsError::InvalidParams(msg));
        for (name, v) in [
            ("omega_ratio", omega_ratio),
            ("delta_minus", delta_minus),
            ("delta_plus", delta_plus),
            ("chi", chi),
            ("p1", p1),
            ("p2", p2),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite, got {v}"));
            }
        }
        if !(chi > T::zero()) {
            return bad(format!("chi must be positive, got {chi}"));
        }
        for (name, p) in [("p1", p1), ("p2", p2)] {
            if p < T::zero() || p > T::one() {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if (p1 + p2 - T::one()).abs() > T::tol(1e-12) {
            return bad(format!("p1 + p2 must equal 1, got {p1} + {p2}"));
        }
        Ok(Self {
            omega_ratio,
            delta_minus,
            delta_plus,
            chi,
            p1,
            p2,
            channels: Channels::all(),
            beta1: spectral_density(delta_plus, chi),
            beta2: spectral_density(delta_minus, chi),
        })
    }

    /// Superconducting flux qubit: `Ω' = 572.3`, `Δ−' = 0`, `χ = 0.033`,
    /// `P1 = 0.8`, `P2 = 0.2`.
    pub fn flux_qubit() -> Self {
        let omega = T::lit(572.3);
        Self::from_parts(
            omega,
            T::zero(),
            T::lit(2.0) * omega,
            T::lit(0.033),
            T::lit(0.8),
            T::lit(0.2),
        )
        .expect("reference parameters are valid")
    }

    /// Moves the drive off resonance; `Δ+'` shifts by the same amount.
    pub fn with_delta_minus(&self, delta_minus: T) -> Result<Self, DynamicsError> {
        let shift = delta_minus - self.delta_minus;
        Self::from_parts(
            self.omega_ratio,
            delta_minus,
            self.delta_plus + shift,
            self.chi,
            self.p1,
            self.p2,
        )
        .map(|p| p.with_channels(self.channels))
    }

    pub fn with_chi(&self, chi: T) -> Result<Self, DynamicsError> {
        Self::from_parts(
            self.omega_ratio,
            self.delta_minus,
            self.delta_plus,
            chi,
            self.p1,
            self.p2,
        )
        .map(|p| p.with_channels(self.channels))
    }

    pub fn with_channels(mut self, channels: Channels) -> Self {
        self.channels = channels;
        self
    }

    /// All dissipation switched off.
    pub fn closed(self) -> Self {
        self.with_channels(Channels::none())
    }

    pub fn omega_ratio(&self) -> T {
        self.omega_ratio
    }
    pub fn delta_minus(&self) -> T {
        self.delta_minus
    }
    pub fn delta_plus(&self) -> T {
        self.delta_plus
    }
    pub fn chi(&self) -> T {
        self.chi
    }
    pub fn p1(&self) -> T {
        self.p1
    }
    pub fn p2(&self) -> T {
        self.p2
    }
    pub fn channels(&self) -> Channels {
        self.channels
    }
    pub fn beta1(&self) -> T {
        self.beta1
    }
    pub fn beta2(&self) -> T {
        self.beta2
    }
    pub fn beta(&self) -> T {
        self.beta1 + self.beta2
    }

    /// Environment rate after channel switches.
    pub fn env_rate(&self) -> T {
        if self.channels.environment {
            self.chi
        } else {
            T::zero()
        }
    }

    /// `β` after channel switches.
    pub fn did_lindblad_weight(&self) -> T {
        if self.channels.did_lindblad {
            self.beta()
        } else {
            T::zero()
        }
    }

    /// `β2` after channel switches.
    pub fn did_double_commutator_weight(&self) -> T {
        if self.channels.did_double_commutator {
            self.beta2
        } else {
            T::zero()
        }
    }

    pub fn to_repr(&self) -> ModelParamsRepr<T> {
        ModelParamsRepr {
            omega_ratio: self.omega_ratio,
            delta_minus: self.delta_minus,
            delta_plus: self.delta_plus,
            chi: self.chi,
            p1: self.p1,
            p2: self.p2,
            channels: self.channels,
        }
    }
}

impl<T: Real> TryFrom<ModelParamsRepr<T>> for ModelParams<T> {
    type Error = DynamicsError;
    fn try_from(r: ModelParamsRepr<T>) -> Result<Self, Self::Error> {
        Self::from_parts(
            r.omega_ratio,
            r.delta_minus,
            r.delta_plus,
            r.chi,
            r.p1,
            r.p2,
        )
        .map(|p| p.with_channels(r.channels))
    }
}

impl<T: Real> From<ModelParams<T>> for ModelParamsRepr<T> {
    fn from(p: ModelParams<T>) -> Self {
        p.to_repr()
    }
}
