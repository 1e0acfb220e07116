//! Fixed-step RK4 on the master equation in the computational basis. It
//! shares nothing with the eigenbasis engines beyond the Hamiltonian, which
//! is what makes it a usable oracle for them.

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, ModelParams};
use crate::qmath::{Operator4, C64};

use super::{check_density, check_time, EngineTag, Trajectory};

/// Largest tolerated `|Tr ρ − 1|` (and purity excess over 1) before the run
/// is declared unstable.
pub const STABILITY_TOL: f64 = 1e-6;

/// `−i[H, ρ] − (γ/2)[H, [H, ρ]]`.
pub fn milburn_rhs(h: &Operator4, gamma: f64, rho: &Operator4) -> Operator4 {
    let c = h.commutator(rho);
    c * C64::new(0.0, -1.0) - h.commutator(&c) * (0.5 * gamma)
}

struct Stepper {
    h: Operator4,
    gamma: f64,
}

impl Stepper {
    fn step(&self, rho: &Operator4, dt: f64) -> Operator4 {
        let f = |r: &Operator4| milburn_rhs(&self.h, self.gamma, r);
        let k1 = f(rho);
        let k2 = f(&(*rho + k1 * (0.5 * dt)));
        let k3 = f(&(*rho + k2 * (0.5 * dt)));
        let k4 = f(&(*rho + k3 * dt));
        (*rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0)).hermitize()
    }

    fn check(&self, rho: &Operator4, dt: f64, t: f64) -> Result<()> {
        let drift = (rho.trace().re - 1.0).abs();
        let excess = (*rho * *rho).trace().re - 1.0;
        if !rho.is_finite() || drift > STABILITY_TOL || excess > STABILITY_TOL {
            return Err(Error::Stability {
                dt,
                t,
                drift: if rho.is_finite() { drift.max(excess) } else { f64::INFINITY },
            });
        }
        Ok(())
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if dt > 0.0 && dt.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("ODE step dt = {dt} must be finite and > 0")))
    }
}

/// States at each of `times` (non-decreasing). Every interval between
/// consecutive targets is split into `⌈Δ/dt⌉` equal steps, so the samples
/// land exactly on the requested times.
pub fn integrate_ode(rho0: &Operator4, params: &ModelParams, times: &[f64], dt: f64) -> Result<Vec<Operator4>> {
    params.validate()?;
    check_density(rho0)?;
    check_dt(dt)?;
    times.iter().try_for_each(|&t| check_time(t))?;
    if let Some(w) = times.windows(2).find(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument(format!("sample times decrease at {} -> {}", w[0], w[1])));
    }
    let stepper = Stepper {
        h: build_hamiltonian(params),
        gamma: params.gamma,
    };
    let mut rho = *rho0;
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        let span = target - now;
        if span > 0.0 {
            let n = (span / dt - 1e-9).ceil().max(1.0) as usize;
            let h = span / n as f64;
            for k in 1..=n {
                rho = stepper.step(&rho, h);
                stepper.check(&rho, h, now + k as f64 * h)?;
            }
            now = target;
        }
        out.push(rho);
    }
    Ok(out)
}

/// Integrate on the grid `0, dt, …, t_max` (the last step shortened to land
/// on `t_max`).
pub fn evolve_ode(rho0: &Operator4, params: &ModelParams, t_max: f64, dt: f64) -> Result<Trajectory> {
    check_dt(dt)?;
    let times = super::sample_times(t_max, dt)?;
    let states = integrate_ode(rho0, params, &times, dt)?;
    Ok(Trajectory {
        params: *params,
        scenario: None,
        times,
        states,
        method: EngineTag::Ode,
    })
}
