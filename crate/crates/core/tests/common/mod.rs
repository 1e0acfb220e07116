#![allow(dead_code)]

use milburn_core::qmath::{Operator2, Operator4, C64};
use milburn_core::{ModelParams, XState};
use proptest::prelude::*;

pub fn fig2(gamma: f64) -> ModelParams {
    ModelParams {
        j_plus: 1.0,
        j_minus: 0.5,
        j_z: 1.0,
        dm: 1.0,
        field: 1.0,
        inhomogeneity: 0.5,
        gamma,
    }
}

/// X-state from uniforms in (0, 1): Dirichlet(1,1,1,1) populations and
/// coherences `|w| = s√(ad)e^{iφ}`, `|z| = s'√(bc)e^{iφ'}`. When `degenerate`
/// the populations are split so that `a + b = c + d = ½`.
pub fn xstate_from_uniforms(u: [f64; 10], degenerate: bool) -> XState {
    let e: Vec<f64> = u[..4].iter().map(|v| -(v.max(1e-300)).ln()).collect();
    let (a, b, c, d) = if degenerate {
        let (s1, s2) = (e[0] + e[1], e[2] + e[3]);
        (0.5 * e[0] / s1, 0.5 * e[1] / s1, 0.5 * e[2] / s2, 0.5 * e[3] / s2)
    } else {
        let s: f64 = e.iter().sum();
        (e[0] / s, e[1] / s, e[2] / s, e[3] / s)
    };
    let tau = std::f64::consts::TAU;
    // Shrink slightly so rounding never pushes a block past positivity.
    let w = C64::from_polar(u[4] * (a * d).sqrt() * (1.0 - 1e-12), tau * u[5]);
    let z = C64::from_polar(u[6] * (b * c).sqrt() * (1.0 - 1e-12), tau * u[7]);
    XState { a, b, c, d, w, z }
}

prop_compose! {
    pub fn arb_xstate()(u in prop::array::uniform10(1e-6f64..1.0), pick in 0u8..10) -> XState {
        xstate_from_uniforms(u, pick == 0)
    }
}

prop_compose! {
    /// Couplings in [−2, 2], γ in [0, 0.5].
    pub fn arb_params()(v in prop::array::uniform6(-2.0f64..2.0), g in 0.0f64..0.5) -> ModelParams {
        ModelParams {
            j_plus: v[0],
            j_minus: v[1],
            j_z: v[2],
            dm: v[3],
            field: v[4],
            inhomogeneity: v[5],
            gamma: g,
        }
    }
}

prop_compose! {
    pub fn arb_hermitian()(v in prop::array::uniform16(-1.0f64..1.0)) -> Operator4 {
        let mut m = Operator4::zeros();
        let mut k = 0;
        for i in 0..4 {
            m[(i, i)] = C64::new(v[k], 0.0);
            k += 1;
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                let z = C64::new(v[k], v[k + 1]);
                k += 2;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }
}

prop_compose! {
    pub fn arb_matrix()(v in prop::array::uniform32(-1.0f64..1.0)) -> Operator4 {
        Operator4::from_fn(|i, j| C64::new(v[2 * (4 * i + j)], v[2 * (4 * i + j) + 1]))
    }
}

/// `exp(−i(θ/2) n·σ)` times a global phase.
pub fn su2(theta: f64, n: [f64; 3], phase: f64) -> Operator2 {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt().max(1e-12);
    let n = n.map(|v| v / norm);
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let g = C64::from_polar(1.0, phase);
    Operator2([
        [C64::new(c, -s * n[2]) * g, C64::new(-s * n[1], -s * n[0]) * g],
        [C64::new(s * n[1], -s * n[0]) * g, C64::new(c, s * n[2]) * g],
    ])
}

prop_compose! {
    pub fn arb_su2()(theta in 0.0f64..6.3, n in prop::array::uniform3(-1.0f64..1.0), phase in 0.0f64..6.3) -> Operator2 {
        su2(theta, n, phase)
    }
}

/// A unitary 4×4 from two local rotations and an entangling phase gate.
pub fn unitary4(a: &Operator2, b: &Operator2, c: &Operator2, d: &Operator2, phi: f64) -> Operator4 {
    let local1 = Operator4::kron(a, b);
    let local2 = Operator4::kron(c, d);
    let mut gate = Operator4::identity();
    gate[(3, 3)] = C64::from_polar(1.0, phi);
    local1 * gate * local2
}
