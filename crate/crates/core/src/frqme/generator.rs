// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use super::ModelParams;
use crate::qops::{anticommutator, commutator, pauli, CMat2, Pauli};
use crate::scalar::Real;

/// Lorentzian spectral density `J(x) = χ / (1 + (xχ)²)`; the imaginary
/// (frequency-shift) part is dropped.
pub fn spectral_density<T: Real>(x: T, chi: T) -> T {
    let xc = x * chi;
    chi / (T::one() + xc * xc)
}

/// `L ρ L† − ½{L†L, ρ}`
fn lindblad<T: Real>(l: &CMat2<T>, rho: &CMat2<T>) -> CMat2<T> {
    let ld = l.adjoint();
    *l * *rho * ld - anticommutator(&(ld * *l), rho).scale_real(T::lit(0.5))
}

/// Right-hand side `dρ/dt'` of the scaled driven-dissipative equation.
///
/// Sums the secular first-order drive, the drive-induced Lindblad pair with
/// weight `2|α'|²β`, the drive-induced double commutators with weight
/// `Re(α'²)·β2` and the bath dissipator with weight `χ`. Disabled channels in
/// `params` contribute nothing.
///
/// This is the operator-algebra form; the propagator uses an equivalent
/// entry-wise kernel.
pub fn generator<T: Real>(rho: &CMat2<T>, t: T, u1: T, u2: T, params: &ModelParams<T>) -> CMat2<T> {
    let sp: CMat2<T> = pauli(Pauli::Plus);
    let sm: CMat2<T> = pauli(Pauli::Minus);
    let i = Complex::new(T::zero(), T::one());
    let alpha = Complex::new(u1, -u2).scale(T::lit(0.25));
    let alpha_c = alpha.conj();
    let phase = Complex::new(T::zero(), -params.delta_minus() * t).exp();

    let drive = commutator(&sp, rho).scale(-i * alpha * phase)
        + commutator(&sm, rho).scale(-i * alpha_c * phase.conj());

    let beta = params.did_lindblad_weight();
    let did_pair =
        (lindblad(&sp, rho) + lindblad(&sm, rho)).scale_real(T::lit(2.0) * alpha.norm_sqr() * beta);

    let beta2 = params.did_double_commutator_weight();
    let coherent = ((alpha * alpha + alpha_c * alpha_c) * T::lit(0.5)).re * beta2;
    let did_cc = (commutator(&sp, &commutator(&sp, rho)).scale(phase * phase)
        + commutator(&sm, &commutator(&sm, rho)).scale((phase * phase).conj()))
    .scale_real(coherent);

    let chi = params.env_rate();
    let env = (lindblad(&sp, rho).scale_real(params.p1())
        + lindblad(&sm, rho).scale_real(params.p2()))
    .scale_real(chi);

    drive + did_pair + did_cc + env
}

/// Per-interval coefficients of the generator, evaluated entry-wise.
///
/// With `σ+ = 2|0⟩⟨1|` every superoperator term collapses to a few complex
/// products on the entries `(a, b; c, d)` of ρ.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StepKernel<T> {
    alpha: Complex<T>,
    delta: T,
    /// `2|α'|²β`
    pair: T,
    /// `Re(α'²)·β2`
    coherent: T,
    env_up: T,
    env_down: T,
}

impl<T: Real> StepKernel<T> {
    pub(crate) fn new(u1: T, u2: T, params: &ModelParams<T>) -> Self {
        let alpha = Complex::new(u1, -u2).scale(T::lit(0.25));
        let chi = params.env_rate();
        Self {
            alpha,
            delta: params.delta_minus(),
            pair: T::lit(2.0) * alpha.norm_sqr() * params.did_lindblad_weight(),
            coherent: (alpha * alpha).re * params.did_double_commutator_weight(),
            env_up: chi * params.p1(),
            env_down: chi * params.p2(),
        }
    }

    /// `e^{−iΔ−' t}`
    #[inline]
    pub(crate) fn phase(&self, t: T) -> Complex<T> {
        if self.delta == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            let (s, c) = (self.delta * t).sin_cos();
            Complex::new(c, -s)
        }
    }

    #[inline]
    pub(crate) fn apply(&self, rho: &CMat2<T>, phase: Complex<T>) -> CMat2<T> {
        let (a, b, c, d) = (rho.a00, rho.a01, rho.a10, rho.a11);
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let eight = T::lit(8.0);

        // −iα e [σ+, ρ] − iα* e* [σ−, ρ]
        let ae = self.alpha * phase;
        let p = Complex::new(two * ae.im, -two * ae.re); // −2iαe
        let m = Complex::new(-two * ae.im, -two * ae.re); // −2iα*e*
        let dr00 = p * c - m * b;
        let dr01 = p * (d - a);
        let dr10 = m * (a - d);

        // relaxation rates out of |1⟩ (up) and out of |0⟩ (down), coherence decay
        let up = four * (self.pair + self.env_up);
        let down = four * (self.pair + self.env_down);
        let dephase = two * (two * self.pair + self.env_up + self.env_down);

        let flow = d.scale(up) - a.scale(down);
        let e2 = phase * phase;
        let k = -eight * self.coherent;

        CMat2::new(
            dr00 + flow,
            dr01 - b.scale(dephase) + (c * e2).scale(k),
            dr10 - c.scale(dephase) + (b * e2.conj()).scale(k),
            -dr00 - flow,
        )
    }
}
