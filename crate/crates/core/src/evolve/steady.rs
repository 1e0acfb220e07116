use crate::error::{Error, Result};
use crate::model::{ModelParams, DEGENERACY_TOL};
use crate::qmath::C64;
use crate::states::XState;

/// `t → ∞` limit of the closed element formulas: every `e^{−2γμ²t}` and
/// `e^{−2γη²t}` term dropped. Each block keeps only the component of its
/// Bloch vector along the block field, so the result does not depend on `γ`.
pub fn steady_state(s0: &XState, p: &ModelParams) -> Result<XState> {
    p.validate()?;
    s0.validate()?;
    if p.gamma == 0.0 {
        return Err(Error::NoSteadyState("gamma = 0: the evolution is unitary and never settles".into()));
    }
    let (mu, eta) = (p.mu(), p.eta());
    if mu < DEGENERACY_TOL {
        return Err(Error::NoSteadyState(
            "mu = 0: the outer {|00>, |11>} sector has no energy splitting and is never damped".into(),
        ));
    }
    if eta < DEGENERACY_TOL {
        return Err(Error::NoSteadyState(
            "eta = 0: the inner {|01>, |10>} sector has no energy splitting and is never damped".into(),
        ));
    }

    let XState { a, b, c, d, w, z } = *s0;
    let (jp, jm, dm, bf, lam) = (p.j_plus, p.j_minus, p.dm, p.field, p.inhomogeneity);
    let (mu2, eta2) = (mu * mu, eta * eta);
    let mix2 = dm * dm + jp * jp;

    let r11 = (a * (bf * bf + mu2) + 2.0 * bf * w.re * jm + d * jm * jm) / (2.0 * mu2);
    let r44 = (a * jm * jm - 2.0 * bf * w.re * jm + d * (bf * bf + mu2)) / (2.0 * mu2);
    let r14 = ((a - d) * bf * jm + 2.0 * w.re * jm * jm) / (2.0 * mu2);

    // Im z has a component along the inner field (J₊, −D, λ); Im w has none
    // along (J₋, 0, B).
    let zi_shift = z.im * dm * lam / eta2;
    let r22 = (c * mix2 + b * (eta2 + lam * lam) + 2.0 * z.re * lam * jp) / (2.0 * eta2) + zi_shift;
    let r33 = (c * (eta2 + lam * lam) + b * (eta2 - lam * lam) - 2.0 * z.re * lam * jp) / (2.0 * eta2) - zi_shift;
    let r23 = C64::new(jp, dm) * ((b - c) * lam + 2.0 * z.re * jp + 2.0 * z.im * dm) / (2.0 * eta2);

    Ok(XState {
        a: r11,
        b: r22,
        c: r33,
        d: r44,
        w: C64::new(r14, 0.0),
        z: r23,
    })
}
