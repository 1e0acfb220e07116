//! Evolution under the Milburn master equation
//!
//! ```text
//! dρ/dt = −i[H, ρ] − (γ/2)[H, [H, ρ]]
//! ```
//!
//! by four interchangeable engines: the eigenbasis solution (`spectral`),
//! the closed element formulas for X-states (`xclosed`), the Kraus
//! operator sum (`kraus`) and fixed-step RK4 (`ode`, the oracle).

mod kraus;
mod ode;
mod spectral;
mod steady;
mod xclosed;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::par::Exec;
use crate::qmath::{validate_density, Operator4, DEFAULT_VALIDATION_TOL};
use crate::states::{ScenarioSpec, XState};

pub use kraus::{evolve_kraus, kraus_terms_needed};
pub use ode::{evolve_ode, integrate_ode, milburn_rhs};
pub use spectral::{evolve_spectral, SpectralPropagator};
pub use steady::steady_state;
pub use xclosed::evolve_xstate_closed;

/// Default Kraus truncation tolerance.
pub const DEFAULT_KRAUS_TOL: f64 = 1e-10;
/// Default RK4 step.
pub const DEFAULT_ODE_DT: f64 = 1e-3;
/// X-pattern tolerance used when routing a matrix to the `xclosed` engine.
pub const XFORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineTag {
    Spectral,
    Xclosed,
    Kraus,
    Ode,
}

impl EngineTag {
    pub const ALL: [EngineTag; 4] = [EngineTag::Spectral, EngineTag::Xclosed, EngineTag::Kraus, EngineTag::Ode];

    pub fn name(self) -> &'static str {
        match self {
            EngineTag::Spectral => "spectral",
            EngineTag::Xclosed => "xclosed",
            EngineTag::Kraus => "kraus",
            EngineTag::Ode => "ode",
        }
    }
}

impl fmt::Display for EngineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s_norm = s.trim().to_ascii_lowercase();
        EngineTag::ALL
            .into_iter()
            .find(|e| e.name() == s_norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown engine '{s}' (expected spectral|xclosed|kraus|ode)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineOptions {
    pub kraus_tol: f64,
    pub ode_dt: f64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            kraus_tol: DEFAULT_KRAUS_TOL,
            ode_dt: DEFAULT_ODE_DT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: ModelParams,
    pub scenario: Option<ScenarioSpec>,
    pub times: Vec<f64>,
    pub states: Vec<Operator4>,
    pub method: EngineTag,
}

impl Trajectory {
    /// Times strictly increasing and every state valid within `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        if self.times.len() != self.states.len() {
            return Err(Error::InvalidArgument("times and states differ in length".into()));
        }
        if let Some(w) = self.times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(format!("times not increasing at {} -> {}", w[0], w[1])));
        }
        for s in &self.states {
            let r = validate_density(s, tol);
            if !r.is_valid() {
                return Err(Error::InvalidDensity(r));
            }
        }
        Ok(())
    }
}

/// `0, dt, 2dt, …` up to `t_max`. The last sample is `t_max` itself when it
/// is not within `dt·1e-9` of the preceding grid point.
pub fn sample_times(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("t_max = {t_max} must be finite and >= 0")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt = {dt} must be finite and > 0")));
    }
    let n = (t_max / dt + 1e-9).floor() as usize;
    let mut times: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
    let last = *times.last().unwrap();
    if t_max - last > dt * 1e-9 {
        times.push(t_max);
    } else {
        *times.last_mut().unwrap() = last.min(t_max);
    }
    Ok(times)
}

pub(crate) fn check_density(rho: &Operator4) -> Result<()> {
    let r = validate_density(rho, DEFAULT_VALIDATION_TOL);
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidDensity(r))
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("time t = {t} must be finite and >= 0")))
    }
}

/// `ρ(t)` at each of `times` (strictly increasing) with the chosen engine.
/// Time points are independent for every engine but `ode`, which integrates
/// through them in order.
pub fn evolve_at(
    engine: EngineTag,
    rho0: &Operator4,
    params: &ModelParams,
    times: &[f64],
    opts: &EngineOptions,
    exec: Exec,
) -> Result<Vec<Operator4>> {
    params.validate()?;
    check_density(rho0)?;
    times.iter().try_for_each(|&t| check_time(t))?;
    match engine {
        EngineTag::Spectral => {
            let prop = SpectralPropagator::new(rho0, params);
            Ok(exec.map_indexed(times.len(), |k| prop.at(times[k])))
        }
        EngineTag::Xclosed => {
            let s0 = XState::from_matrix(rho0, XFORM_TOL)?;
            xclosed::check_regular(params)?;
            exec.try_map_indexed(times.len(), |k| {
                evolve_xstate_closed(&s0, params, times[k]).map(|s| s.to_matrix())
            })
        }
        EngineTag::Kraus => exec.try_map_indexed(times.len(), |k| evolve_kraus(rho0, params, times[k], opts.kraus_tol)),
        EngineTag::Ode => integrate_ode(rho0, params, times, opts.ode_dt),
    }
}

/// Sample `ρ(t)` on [`sample_times`] and package the result.
pub fn run_trajectory(
    engine: EngineTag,
    scenario: Option<ScenarioSpec>,
    rho0: &Operator4,
    params: &ModelParams,
    t_max: f64,
    dt_sample: f64,
    opts: &EngineOptions,
    exec: Exec,
) -> Result<Trajectory> {
    let times = sample_times(t_max, dt_sample)?;
    let states = evolve_at(engine, rho0, params, &times, opts, exec)?;
    Ok(Trajectory {
        params: *params,
        scenario,
        times,
        states,
        method: engine,
    })
}
