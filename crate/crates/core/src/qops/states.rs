// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{density_from_state, DensityMatrix, QopsError};
use crate::scalar::Real;

/// Two complex amplitudes in the `{|0⟩, |1⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector<T>([Complex<T>; 2]);

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: [Complex<T>; 2]) -> Self {
        Self(amplitudes)
    }

    pub fn amplitudes(&self) -> [Complex<T>; 2] {
        self.0
    }

    pub fn norm_sqr(&self) -> T {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }
}

/// The state library used for transfers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NamedState {
    PlusZ,
    MinusZ,
    PlusX,
    MinusX,
    PlusY,
    MinusY,
    /// `cos(π/8)|0⟩ + sin(π/8)|1⟩`
    PlusS,
    /// `cos(π/8)|0⟩ + i·sin(π/8)|1⟩`
    PlusR,
}

impl NamedState {
    pub const ALL: [NamedState; 8] = [
        NamedState::PlusZ,
        NamedState::MinusZ,
        NamedState::PlusX,
        NamedState::MinusX,
        NamedState::PlusY,
        NamedState::MinusY,
        NamedState::PlusS,
        NamedState::PlusR,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NamedState::PlusZ => "+Z",
            NamedState::MinusZ => "-Z",
            NamedState::PlusX => "+X",
            NamedState::MinusX => "-X",
            NamedState::PlusY => "+Y",
            NamedState::MinusY => "-Y",
            NamedState::PlusS => "+S",
            NamedState::PlusR => "+R",
        }
    }

    pub fn valid_labels() -> String {
        Self::ALL
            .iter()
            .map(|s| s.label())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn state_vector<T: Real>(self) -> StateVector<T> {
        let o = T::zero();
        let l = T::one();
        let h = T::FRAC_1_SQRT_2();
        let (c8, s8) = {
            let a = T::PI() / T::lit(8.0);
            (a.cos(), a.sin())
        };
        let re = |x: T| Complex::new(x, o);
        let im = |x: T| Complex::new(o, x);
        StateVector::new(match self {
            NamedState::PlusZ => [re(l), re(o)],
            NamedState::MinusZ => [re(o), re(l)],
            NamedState::PlusX => [re(h), re(h)],
            NamedState::MinusX => [re(h), re(-h)],
            NamedState::PlusY => [re(h), im(h)],
            NamedState::MinusY => [re(h), im(-h)],
            NamedState::PlusS => [re(c8), re(s8)],
            NamedState::PlusR => [re(c8), im(s8)],
        })
    }

    pub fn density<T: Real>(self) -> DensityMatrix<T> {
        density_from_state(&self.state_vector()).expect("library states are normalized")
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NamedState {
    type Err = QopsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().replace('\u{2212}', "-").to_ascii_uppercase();
        let norm = if norm.len() == 1 {
            format!("+{norm}")
        } else {
            norm
        };
        NamedState::ALL
            .into_iter()
            .find(|st| st.label() == norm)
            .ok_or_else(|| QopsError::UnknownState {
                label: s.to_string(),
                valid: Self::valid_labels(),
            })
    }
}

impl TryFrom<String> for NamedState {
    type Error = QopsError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<NamedState> for String {
    fn from(s: NamedState) -> Self {
        s.label().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn all_states_unit_norm() {
        for s in NamedState::ALL {
            let v = s.state_vector::<f64>();
            assert!((v.norm_sqr() - 1.0).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn pairwise_overlaps_match_analytic() {
        use NamedState::*;
        let ov = |a: NamedState, b: NamedState| {
            a.state_vector::<f64>().inner(&b.state_vector()).norm_sqr()
        };
        let c2 = (PI / 8.0).cos().powi(2);
        let cases = [
            (PlusZ, MinusZ, 0.0),
            (PlusX, MinusX, 0.0),
            (PlusY, MinusY, 0.0),
            (PlusZ, PlusX, 0.5),
            (PlusX, PlusY, 0.5),
            (PlusZ, PlusS, c2),
            (PlusZ, PlusR, c2),
            // ⟨S|R⟩ = cos² + i sin²
            (PlusS, PlusR, c2.powi(2) + (1.0 - c2).powi(2)),
            // ⟨X|S⟩ = (cos + sin)/√2
            (
                PlusX,
                PlusS,
                ((PI / 8.0).cos() + (PI / 8.0).sin()).powi(2) / 2.0,
            ),
        ];
        for (a, b, want) in cases {
            assert!((ov(a, b) - want).abs() < 1e-12, "{a} {b}");
        }
        for a in NamedState::ALL {
            assert!((ov(a, a) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_and_display() {
        for s in NamedState::ALL {
            assert_eq!(s.label().parse::<NamedState>().unwrap(), s);
        }
        assert_eq!("−x".parse::<NamedState>().unwrap(), NamedState::MinusX);
        assert_eq!("Z".parse::<NamedState>().unwrap(), NamedState::PlusZ);
        let err = "+Q".parse::<NamedState>().unwrap_err();
        assert!(err.to_string().contains("+S"));
    }
}
