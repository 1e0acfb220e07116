//! Concurrence, Hilbert-Schmidt MIN `N₂` and trace MIN `N₁`.
//!
//! MIN is the largest disturbance `‖ρ − Π(ρ)‖` over local projective
//! measurements `Π = {Πₖ ⊗ 𝟙}` on qubit `a` that leave the marginal `ρᵃ`
//! unchanged; `N₂` uses the squared Frobenius norm, `N₁` the trace norm.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::qmath::{
    bloch_decompose, eigh_unchecked, hermitian_eigenvalues, marginal_a, sigma_yy, svd3, trace_norm, BlochRep,
    Operator2, Operator4,
};
use crate::states::XState;

/// Local Bloch vectors shorter than this count as zero (degenerate marginal).
pub const MARGINAL_TOL: f64 = 1e-9;
/// Points on the Fibonacci sphere searched by [`min_numeric`].
pub const SPHERE_GRID_POINTS: usize = 10_000;
/// Coordinate-descent refinement stops below this angular step.
pub const REFINE_STEP: f64 = 1e-6;

/// `max{0, λ₁ − λ₂ − λ₃ − λ₄}` with `λᵢ` the descending square roots of the
/// eigenvalues of `ρ ρ̃`, `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`. Evaluated through the
/// Hermitian matrix `√ρ ρ̃ √ρ`, which has the same spectrum.
pub fn concurrence_general(rho: &Operator4) -> f64 {
    let syy = sigma_yy();
    let tilde = syy * rho.conj() * syy;
    let sqrt_rho = eigh_unchecked(&rho.hermitize()).map_spectrum(|e| e.max(0.0).sqrt());
    let r = (sqrt_rho * tilde * sqrt_rho).hermitize();
    let lam = hermitian_eigenvalues(&r).map(|e| e.max(0.0).sqrt());
    (lam[0] - lam[1] - lam[2] - lam[3]).max(0.0)
}

pub fn concurrence_xstate(s: &XState) -> f64 {
    let bc = (s.b * s.c).max(0.0).sqrt();
    let ad = (s.a * s.d).max(0.0).sqrt();
    2.0 * (s.w.norm() - bc).max(s.z.norm() - ad).max(0.0)
}

/// `¼(Tr TTᵀ − x̂ᵀTTᵀx̂)`, or `¼(Tr TTᵀ − λ_min(TTᵀ))` when `x = 0`.
pub fn min_hs_closed(rho: &Operator4) -> f64 {
    min_hs_from_bloch(&bloch_decompose(rho))
}

fn min_hs_from_bloch(rep: &BlochRep) -> f64 {
    let ttt = rep.ttt();
    let tr = ttt[0][0] + ttt[1][1] + ttt[2][2];
    let x = rep.x;
    let nx2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    let removed = if nx2.sqrt() > MARGINAL_TOL {
        let mut q = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                q += x[i] * ttt[i][j] * x[j];
            }
        }
        q / nx2
    } else {
        // TTᵀ is positive semidefinite: its eigenvalues are the squared
        // singular values of T.
        let (_, s, _) = svd3(&rep.t);
        s[2] * s[2]
    };
    (0.25 * (tr - removed)).max(0.0)
}

/// `(√χ₊ + √χ₋)/(2‖x‖)` with `χ± = α ± 2√β̃‖x‖`,
/// `α = ‖c‖²‖x‖² − Σcᵢ²xᵢ²`, `β̃ = Σ_cyclic xᵢ²cⱼ²cₖ²` and `x` taken in the frame
/// where `T = diag(c)`; `max|cᵢ|` when `x = 0`.
pub fn min_trace_closed(rho: &Operator4) -> f64 {
    min_trace_from_bloch(&bloch_decompose(rho))
}

fn min_trace_from_bloch(rep: &BlochRep) -> f64 {
    let c = rep.c;
    let x = rep.x_local();
    let nx = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if nx <= MARGINAL_TOL {
        return c.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    }
    // (√χ₊ + √χ₋)² = 2α + 2√(α² − 4β̃‖x‖²). The discriminant is expanded so
    // that it carries no cancellation between α² and 4β̃‖x‖².
    let w = x.map(|v| v * v);
    let c2 = c.map(|v| v * v);
    let alpha = w[0] * (c2[1] + c2[2]) + w[1] * (c2[0] + c2[2]) + w[2] * (c2[0] + c2[1]);
    let others = [(1, 2), (0, 2), (0, 1)];
    let mut disc = 0.0;
    for i in 0..3 {
        let (j, k) = others[i];
        disc += w[i] * w[i] * (c2[j] - c2[k]).powi(2);
    }
    for (i, k, m) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        disc += 2.0 * w[i] * w[k] * (c2[i] - c2[m]) * (c2[k] - c2[m]);
    }
    let sum_sq = 2.0 * alpha + 2.0 * disc.max(0.0).sqrt();
    sum_sq.max(0.0).sqrt() / (2.0 * nx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinPair {
    pub min_hs: f64,
    pub min_trace: f64,
    /// The marginal was degenerate and the general formulas were used.
    pub routed: bool,
}

/// `N₂ = 2(|ρ₂₃|² + |ρ₁₄|²)`, `N₁ = 2(|ρ₂₃| + |ρ₁₄|)` when the marginal of
/// qubit `a` is nondegenerate (`|a + b − c − d| > 1e-9`); otherwise the
/// general closed formulas, with `routed` set.
pub fn min_xstate(s: &XState) -> MinPair {
    if (s.a + s.b - s.c - s.d).abs() > MARGINAL_TOL {
        let (w, z) = (s.w.norm(), s.z.norm());
        MinPair {
            min_hs: 2.0 * (w * w + z * z),
            min_trace: 2.0 * (w + z),
            routed: false,
        }
    } else {
        let rep = bloch_decompose(&s.to_matrix());
        MinPair {
            min_hs: min_hs_from_bloch(&rep),
            min_trace: min_trace_from_bloch(&rep),
            routed: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinNorm {
    /// Squared Frobenius norm.
    Hs,
    Trace,
}

/// `‖ρ − Π(ρ)‖` for the measurement along the unit vector `n` on qubit `a`.
pub fn measurement_disturbance(rho: &Operator4, n: [f64; 3], norm: MinNorm) -> f64 {
    let id = Operator2::identity();
    let mut measured = Operator4::zeros();
    for s in [1.0, -1.0] {
        let p = Operator4::kron(&Operator2::bloch_projector(n, s), &id);
        measured += p * *rho * p;
    }
    let diff = *rho - measured;
    match norm {
        MinNorm::Hs => diff.frobenius_sq(),
        MinNorm::Trace => trace_norm(&diff),
    }
}

/// Brute-force MIN. With a nondegenerate marginal the invariance constraint
/// forces `n = x/‖x‖`; otherwise the maximum over a Fibonacci sphere grid is
/// refined by coordinate descent in `(θ, φ)`.
pub fn min_numeric(rho: &Operator4, norm: MinNorm, exec: Exec) -> f64 {
    let ma = marginal_a(rho);
    let x = [
        2.0 * ma[(0, 1)].re,
        -2.0 * ma[(0, 1)].im,
        (ma[(0, 0)] - ma[(1, 1)]).re,
    ];
    let nx = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if nx > MARGINAL_TOL {
        return measurement_disturbance(rho, x.map(|v| v / nx), norm);
    }

    let grid = |k: usize| fibonacci_point(k, SPHERE_GRID_POINTS);
    let (best, mut value) = exec
        .argmax(SPHERE_GRID_POINTS, |k| measurement_disturbance(rho, grid(k), norm))
        .expect("grid is nonempty");
    let n0 = grid(best);
    let mut theta = n0[2].clamp(-1.0, 1.0).acos();
    let mut phi = n0[1].atan2(n0[0]);
    let eval = |th: f64, ph: f64| measurement_disturbance(rho, direction(th, ph), norm);

    let mut step = (4.0 * std::f64::consts::PI / SPHERE_GRID_POINTS as f64).sqrt();
    while step >= REFINE_STEP {
        let mut improved = false;
        for (dth, dph) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = eval(theta + dth, phi + dph);
            if v > value {
                value = v;
                theta += dth;
                phi += dph;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    value
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Point `k` of an `n`-point Fibonacci lattice on the unit sphere.
pub fn fibonacci_point(k: usize, n: usize) -> [f64; 3] {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = golden * k as f64;
    [r * phi.cos(), r * phi.sin(), z]
}

/// `Tr ρ²`.
pub fn purity(rho: &Operator4) -> f64 {
    rho.trace_product(rho).re
}

/// One row of a correlation time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSample {
    pub t: f64,
    pub concurrence: f64,
    pub min_hs: f64,
    pub min_trace: f64,
    pub purity: f64,
}

impl CorrelationSample {
    /// `C ∈ [0, 1]`, `N₂ ∈ [0, ½]`, `N₁ ∈ [0, 1]`, purity `∈ [¼, 1]`, all
    /// finite, within `tol`.
    pub fn check_ranges(&self, tol: f64) -> Result<()> {
        let checks = [
            ("t", self.t, f64::NEG_INFINITY, f64::INFINITY),
            ("concurrence", self.concurrence, 0.0, 1.0),
            ("min_hs", self.min_hs, 0.0, 0.5),
            ("min_trace", self.min_trace, 0.0, 1.0),
            ("purity", self.purity, 0.25, 1.0),
        ];
        for (name, v, lo, hi) in checks {
            if !v.is_finite() || v < lo - tol || v > hi + tol {
                return Err(Error::InvalidState(format!(
                    "{name} = {v} outside [{lo}, {hi}] at t = {}",
                    self.t
                )));
            }
        }
        Ok(())
    }
}

/// Measures of `rho` at time `t`. X-form states (non-X entries ≤ `1e-12`)
/// use the X-state formulas, anything else the general ones.
pub fn correlation_sample(t: f64, rho: &Operator4) -> CorrelationSample {
    match XState::from_matrix(rho, 1e-12) {
        Ok(s) => {
            let mins = min_xstate(&s);
            CorrelationSample {
                t,
                concurrence: concurrence_xstate(&s),
                min_hs: mins.min_hs,
                min_trace: mins.min_trace,
                purity: purity(rho),
            }
        }
        Err(_) => CorrelationSample {
            t,
            concurrence: concurrence_general(rho),
            min_hs: min_hs_closed(rho),
            min_trace: min_trace_closed(rho),
            purity: purity(rho),
        },
    }
}
