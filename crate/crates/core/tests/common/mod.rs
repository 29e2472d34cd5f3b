// Copyright 2026 The frqme Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference implementations shared by the integration tests.

#![allow(dead_code)]

use frqme::frqme::PulseSequence;
use frqme::grape::{objective, Problem};
use frqme::qops::{CMat2, DensityMatrix};
use num_complex::Complex;

type C = Complex<f64>;

/// Five-point central difference of the objective along flat coordinate `k`.
pub fn five_point(pulse: &PulseSequence<f64>, prob: &Problem<f64>, k: usize, h: f64) -> f64 {
    let x = pulse.to_flat();
    let f = |s: f64| {
        let mut y = x.clone();
        y[k] += s * h;
        objective(&PulseSequence::from_flat(pulse.dt(), &y).unwrap(), prob).unwrap()
    };
    (-f(2.0) + 8.0 * f(1.0) - 8.0 * f(-1.0) + f(-2.0)) / (12.0 * h)
}

/// Eigenpairs of a 2×2 Hermitian matrix, eigenvectors normalized.
fn eigh(m: &CMat2<f64>) -> [(f64, [C; 2]); 2] {
    let a = m.a00.re;
    let d = m.a11.re;
    let b = m.a01;
    let half = 0.5 * (a - d);
    let r = (half * half + b.norm_sqr()).sqrt();
    let mean = 0.5 * (a + d);
    let pair = |lam: f64| -> [C; 2] {
        // (A − λ)v = 0 with v = (b, λ − a) or, when b ≈ 0, a basis vector
        let v = if b.norm() > 1e-300 {
            [b, C::new(lam - a, 0.0)]
        } else if (lam - a).abs() < (lam - d).abs() {
            [C::new(1.0, 0.0), C::new(0.0, 0.0)]
        } else {
            [C::new(0.0, 0.0), C::new(1.0, 0.0)]
        };
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / n, v[1] / n]
    };
    let (l0, l1) = (mean - r, mean + r);
    let v0 = pair(l0);
    // second vector orthogonal to the first keeps degenerate cases sound
    let v1 = [-v0[1].conj(), v0[0].conj()];
    [(l0, v0), (l1, v1)]
}

fn from_spectrum(pairs: &[(f64, [C; 2]); 2], f: impl Fn(f64) -> f64) -> CMat2<f64> {
    let mut out = CMat2::zero();
    for (lam, v) in pairs {
        let w = f(*lam);
        let p = CMat2::outer(*v, *v).scale_real(w);
        out = out.add_scaled(&p, 1.0);
    }
    out
}

/// `[Tr √(√σ ρ √σ)]²` evaluated through explicit eigendecompositions.
pub fn fidelity_by_eigendecomposition(sigma: &DensityMatrix<f64>, rho: &DensityMatrix<f64>) -> f64 {
    let sqrt_sigma = from_spectrum(&eigh(sigma.matrix()), |l| l.max(0.0).sqrt());
    let inner = (sqrt_sigma * *rho.matrix() * sqrt_sigma).hermitian_part();
    let s: f64 = eigh(&inner).iter().map(|(l, _)| l.max(0.0).sqrt()).sum();
    s * s
}
