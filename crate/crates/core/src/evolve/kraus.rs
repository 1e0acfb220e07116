use crate::error::{Error, Result};
use crate::model::{analytic_spectrum, ModelParams};
use crate::qmath::{Operator4, C64};

use super::{check_density, check_time};

/// Hard cap on the number of Kraus terms.
pub const MAX_KRAUS_TERMS: usize = 10_000;

/// `ln(x^{L+1}/(L+1)!)`, the log of the remainder bound after `L` terms.
fn log_remainder(x: f64, terms: usize) -> f64 {
    let l1 = (terms + 1) as f64;
    l1 * x.ln() - (1..=terms + 1).map(|k| (k as f64).ln()).sum::<f64>()
}

/// Smallest `L` with `x^{L+1}/(L+1)! < tol`, where `x = γt·max|EₘEₙ|`.
///
/// In the eigenbasis element `(m, n)` of the `l`-th term carries
/// `e^{−γt(Eₘ² + Eₙ²)/2} (γt EₘEₙ)^l / l!`; the Gaussian prefactor is at most
/// `e^{−|x|}`, which cancels the `e^{|x|}` of the Lagrange remainder.
pub fn kraus_terms_needed(x: f64, tol: f64) -> Result<usize> {
    if x == 0.0 {
        return Ok(0);
    }
    let target = tol.ln();
    let mut log_bound = x.ln(); // L = 0
    let mut terms = 0;
    while log_bound >= target {
        terms += 1;
        if terms >= MAX_KRAUS_TERMS {
            return Err(Error::Truncation {
                tol,
                terms,
                bound: log_remainder(x, terms).exp(),
            });
        }
        log_bound += x.ln() - ((terms + 1) as f64).ln();
    }
    Ok(terms)
}

/// `Σ_{l=0}^{L} Mₗ ρ₀ Mₗ†` with
/// `Mₗ = (γt)^{l/2}/√(l!) · H^l e^{−iHt} e^{−γtH²/2}`, applied in the
/// energy eigenbasis where every `Mₗ` is diagonal.
pub fn evolve_kraus(rho0: &Operator4, params: &ModelParams, t: f64, tol: f64) -> Result<Operator4> {
    params.validate()?;
    check_density(rho0)?;
    check_time(t)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("Kraus tolerance {tol} must be > 0")));
    }
    let spec = analytic_spectrum(params);
    let e = spec.energies;
    let gt = params.gamma * t;
    let x_max = e
        .iter()
        .flat_map(|a| e.iter().map(move |b| (a * b).abs()))
        .fold(0.0, f64::max)
        * gt;
    let terms = kraus_terms_needed(x_max, tol)?;

    let u = spec.unitary();
    let u_dag = u.adjoint();
    let mut r = u_dag * *rho0 * u;
    for m in 0..4 {
        for n in 0..4 {
            let x = gt * e[m] * e[n];
            let gauss = -0.5 * gt * (e[m] * e[m] + e[n] * e[n]);
            // Σ_l x^l/l! times the Gaussian, term by term in log space.
            let mut sum = gauss.exp();
            if x != 0.0 {
                let ln_abs = x.abs().ln();
                let mut log_term = gauss;
                for l in 1..=terms {
                    log_term += ln_abs - (l as f64).ln();
                    let sign = if x < 0.0 && l % 2 == 1 { -1.0 } else { 1.0 };
                    sum += sign * log_term.exp();
                }
            }
            r[(m, n)] *= C64::from_polar(sum, -(e[m] - e[n]) * t);
        }
    }
    Ok((u * r * u_dag).hermitize())
}
