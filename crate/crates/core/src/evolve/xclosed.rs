//! Closed element formulas for an X-state. The outer block
//! `{|00⟩, |11⟩}` oscillates at `2μ` and decays as `e^{−2γμ²t}`, the
//! inner block `{|01⟩, |10⟩}` at `2η` with `e^{−2γη²t}`.

use crate::error::{Error, Result};
use crate::model::{ModelParams, DEGENERACY_TOL};
use crate::qmath::C64;
use crate::states::XState;

use super::check_time;

pub(crate) fn check_regular(p: &ModelParams) -> Result<()> {
    let singular = |reason: String| Error::Singular {
        engine: "xclosed",
        reason,
        remedy: "spectral",
    };
    if p.mu() < DEGENERACY_TOL {
        return Err(singular("mu = 0 (B = J- = 0)".into()));
    }
    if p.eta() < DEGENERACY_TOL {
        return Err(singular("eta = 0 (lambda = D = J+ = 0)".into()));
    }
    if (p.dm * p.dm + p.j_plus * p.j_plus).sqrt() < DEGENERACY_TOL {
        return Err(singular("eta^2 = lambda^2 (D = J+ = 0), the rho23 formula divides by eta^2 - lambda^2".into()));
    }
    Ok(())
}

/// The element formulas for real `w`, `z`, plus the contribution of their
/// imaginary parts (the formulas are linear in the initial state).
pub fn evolve_xstate_closed(s0: &XState, p: &ModelParams, t: f64) -> Result<XState> {
    p.validate()?;
    check_time(t)?;
    check_regular(p)?;
    s0.validate()?;

    let XState { a, b, c, d, .. } = *s0;
    let (w, z) = (s0.w.re, s0.z.re);
    let (jp, jm, dm, bf, lam) = (p.j_plus, p.j_minus, p.dm, p.field, p.inhomogeneity);
    let (mu, eta) = (p.mu(), p.eta());
    let (mu2, eta2) = (mu * mu, eta * eta);
    let mix2 = dm * dm + jp * jp;
    let em = (-2.0 * p.gamma * t * mu2).exp();
    let ee = (-2.0 * p.gamma * t * eta2).exp();
    let (cm, sm) = ((2.0 * mu * t).cos(), (2.0 * mu * t).sin());
    let (ce, se) = ((2.0 * eta * t).cos(), (2.0 * eta * t).sin());

    let outer_osc = (a - d) * jm * jm - 2.0 * bf * w * jm;
    let r11 = ((a * (bf * bf + mu2) + 2.0 * bf * w * jm + d * jm * jm) + em * cm * outer_osc) / (2.0 * mu2);
    let r44 = ((a * jm * jm - 2.0 * bf * w * jm + d * (bf * bf + mu2)) - em * cm * outer_osc) / (2.0 * mu2);

    let inner_osc = 2.0 * dm * z * eta * se + ce * ((b - c) * mix2 - 2.0 * z * lam * jp);
    let r22 = ((c * mix2 + b * (eta2 + lam * lam) + 2.0 * z * lam * jp) + ee * inner_osc) / (2.0 * eta2);
    let r33 = ((c * (eta2 + lam * lam) + b * (eta2 - lam * lam) - 2.0 * z * lam * jp) - ee * inner_osc) / (2.0 * eta2);

    let i = C64::i();
    let r14 = (C64::from((a - d) * bf * jm + 2.0 * w * jm * jm)
        - em * ((a - d) * jm - 2.0 * bf * w) * C64::new(bf * cm, -mu * sm))
        / (2.0 * mu2);

    let d_minus_ijp = C64::new(dm, -jp);
    let r23 = (i * d_minus_ijp * ((b - c) * lam + 2.0 * z * jp)
        + ee / (eta2 - lam * lam)
            * (eta * se * d_minus_ijp * (C64::from(-(b - c) * mix2 + 2.0 * z * lam * jp) - 2.0 * i * dm * z * lam)
                + ce * C64::new(jp, dm) * (C64::from(-(b - c) * lam * mix2 + 2.0 * z * lam * lam * jp) - 2.0 * i * dm * z * eta2)))
        / (2.0 * eta2);

    let mut out = XState {
        a: r11,
        b: r22,
        c: r33,
        d: r44,
        w: r14,
        z: r23,
    };

    // Imaginary coherences: a traceless block Bloch vector (0, −2v, 0)
    // precessing about h = (J₋, 0, B) or (J₊, −D, λ).
    let vw = s0.w.im;
    if vw != 0.0 {
        let [rx, ry, rz] = block_bloch([jm, 0.0, bf], [0.0, -2.0 * vw, 0.0], em, cm, sm);
        out.a += 0.5 * rz;
        out.d -= 0.5 * rz;
        out.w += C64::new(0.5 * rx, -0.5 * ry);
    }
    let vz = s0.z.im;
    if vz != 0.0 {
        let [rx, ry, rz] = block_bloch([jp, -dm, lam], [0.0, -2.0 * vz, 0.0], ee, ce, se);
        out.b += 0.5 * rz;
        out.c -= 0.5 * rz;
        out.z += C64::new(0.5 * rx, -0.5 * ry);
    }
    Ok(out)
}

/// `r(t) = (r·ĥ)ĥ + e[r⊥ cos + (ĥ × r) sin]` for a block `H = h·σ`.
fn block_bloch(h: [f64; 3], r: [f64; 3], decay: f64, cos: f64, sin: f64) -> [f64; 3] {
    let norm = (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
    let u = h.map(|x| x / norm);
    let along = u[0] * r[0] + u[1] * r[1] + u[2] * r[2];
    let cross = [
        u[1] * r[2] - u[2] * r[1],
        u[2] * r[0] - u[0] * r[2],
        u[0] * r[1] - u[1] * r[0],
    ];
    [0, 1, 2].map(|k| along * u[k] + decay * ((r[k] - along * u[k]) * cos + cross[k] * sin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::evolve_spectral;
    use crate::states::{make_initial_state, ScenarioKind, ScenarioSpec};

    fn fig2() -> ModelParams {
        ModelParams {
            j_plus: 1.0,
            j_minus: 0.5,
            j_z: 1.0,
            dm: 1.0,
            field: 1.0,
            inhomogeneity: 0.5,
            gamma: 0.05,
        }
    }

    fn spectral_x(s: &XState, p: &ModelParams, t: f64) -> XState {
        XState::from_matrix(&evolve_spectral(&s.to_matrix(), p, t).unwrap(), 1e-12).unwrap()
    }

    #[test]
    fn t_zero_is_identity() {
        for kind in ScenarioKind::NAMED {
            let s = make_initial_state(&ScenarioSpec::new(kind, 0.6)).unwrap();
            let out = evolve_xstate_closed(&s, &fig2(), 0.0).unwrap();
            assert!(out.max_abs_diff(&s) < 1e-14, "{kind}");
        }
    }

    #[test]
    fn bell_psi_keeps_outer_block_empty() {
        let s = make_initial_state(&ScenarioSpec::new(ScenarioKind::BellPsi, 1.0)).unwrap();
        for t in [0.3, 2.0, 11.0] {
            let out = evolve_xstate_closed(&s, &fig2(), t).unwrap();
            assert_eq!(out.a, 0.0);
            assert_eq!(out.d, 0.0);
        }
    }

    #[test]
    fn prod00_population() {
        let s = make_initial_state(&ScenarioSpec::new(ScenarioKind::Prod00, 1.0)).unwrap();
        let mu = 1.25f64.sqrt();
        for t in [0.0, 0.5, 3.7, 12.0] {
            let out = evolve_xstate_closed(&s, &fig2(), t).unwrap();
            // a(B² + μ²) = 2.25 static, (a − d)J₋² = 0.25 oscillating.
            let want = (2.25 + (-2.5 * 0.05 * t).exp() * 0.25 * (2.0 * mu * t).cos()) / 2.5;
            assert!((out.a - want).abs() < 1e-14, "{} vs {want}", out.a);
        }
    }

    #[test]
    fn matches_spectral_with_complex_coherences() {
        let s = XState {
            a: 0.3,
            b: 0.2,
            c: 0.1,
            d: 0.4,
            w: C64::new(0.12, -0.2),
            z: C64::new(-0.05, 0.11),
        };
        s.validate().unwrap();
        for t in [0.0, 0.4, 1.9, 7.3] {
            let got = evolve_xstate_closed(&s, &fig2(), t).unwrap();
            assert!(got.max_abs_diff(&spectral_x(&s, &fig2(), t)) < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn singular_points_are_refused() {
        let s = XState::maximally_mixed();
        for p in [
            ModelParams { j_plus: 0.0, dm: 0.0, ..fig2() },
            ModelParams { j_minus: 0.0, field: 0.0, ..fig2() },
        ] {
            match evolve_xstate_closed(&s, &p, 1.0) {
                Err(Error::Singular { remedy, .. }) => assert_eq!(remedy, "spectral"),
                other => panic!("expected a singular-parameter error, got {other:?}"),
            }
        }
    }
}
