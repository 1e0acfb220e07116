//! Scenario runs.

use milburn_core::evolve::{run_trajectory, steady_state, EngineOptions};
use milburn_core::measures::correlation_sample;
use milburn_core::par::Exec;
use milburn_core::states::make_initial_state;
use milburn_core::{CorrelationSample, Trajectory, XState};

use crate::config::RunConfig;
use crate::error::{LabError, Result};
use crate::output::Series;

/// Slack on the measure ranges of emitted rows.
pub const RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct RunResult {
    pub trajectory: Trajectory,
    pub samples: Vec<CorrelationSample>,
}

impl RunResult {
    pub fn series<'a>(&'a self, cfg: &RunConfig) -> Series<'a> {
        Series {
            samples: &self.samples,
            states: cfg.outputs.elements().then_some(self.trajectory.states.as_slice()),
        }
    }

    pub fn render(&self, cfg: &RunConfig) -> Result<String> {
        self.series(cfg).render(cfg.format)
    }
}

pub fn initial_state(cfg: &RunConfig) -> Result<XState> {
    make_initial_state(&cfg.scenario).map_err(|e| LabError::Config(e.to_string()))
}

/// Evolve the configured scenario and measure every sample.
pub fn run_scenario(cfg: &RunConfig, exec: Exec) -> Result<RunResult> {
    cfg.validate()?;
    let rho0 = initial_state(cfg)?.to_matrix();
    let opts = EngineOptions {
        ode_dt: cfg.ode_dt,
        ..EngineOptions::default()
    };
    let trajectory = run_trajectory(
        cfg.engine,
        Some(cfg.scenario),
        &rho0,
        &cfg.params,
        cfg.t_max,
        cfg.dt_sample,
        &opts,
        exec,
    )?;
    let samples = exec.map_indexed(trajectory.times.len(), |k| {
        correlation_sample(trajectory.times[k], &trajectory.states[k])
    });
    for s in &samples {
        s.check_ranges(RANGE_TOL)?;
    }
    Ok(RunResult { trajectory, samples })
}

/// The `t → ∞` state of the configured scenario and its measures.
pub fn steady_report(cfg: &RunConfig) -> Result<(XState, CorrelationSample)> {
    let s0 = initial_state(cfg)?;
    let st = steady_state(&s0, &cfg.params)?;
    Ok((st, correlation_sample(f64::INFINITY, &st.to_matrix())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigPatch;
    use milburn_core::evolve::EngineTag;

    fn cfg(text: &str) -> RunConfig {
        ConfigPatch::parse_flat(text).unwrap().resolve().unwrap()
    }

    #[test]
    fn bell_phi_start_and_tail() {
        let c = cfg("t_max = 200\ndt_sample = 0.5");
        let r = run_scenario(&c, Exec::default()).unwrap();
        let first = r.samples[0];
        assert!((first.concurrence - 1.0).abs() < 1e-12);
        assert!((first.min_trace - 1.0).abs() < 1e-12);
        assert!((first.min_hs - 0.5).abs() < 1e-12);
        let last = r.samples.last().unwrap();
        assert_eq!(last.t, 200.0);
        assert!((last.concurrence - 0.2).abs() < 1e-4);
        assert!((last.min_hs - 0.02).abs() < 1e-4);
    }

    #[test]
    fn undamped_bell_psi_is_periodic() {
        let per = std::f64::consts::PI / 1.5;
        let c = cfg(&format!("scenario = bell-psi\ngamma = 0\nt_max = {}\ndt_sample = {}", 4.0 * per, per / 16.0));
        let r = run_scenario(&c, Exec::Sequential).unwrap();
        for k in 0..r.samples.len() - 16 {
            let (a, b) = (r.samples[k], r.samples[k + 16]);
            assert!((a.concurrence - b.concurrence).abs() < 1e-12);
            assert!((a.min_hs - b.min_hs).abs() < 1e-12);
            assert!((a.min_trace - b.min_trace).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_xclosed_names_remedy() {
        let c = cfg("engine = xclosed\njp = 0\ndm = 0\nt_max = 1");
        let err = run_scenario(&c, Exec::Sequential).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("spectral"), "{err}");
        assert_eq!(c.engine, EngineTag::Xclosed);
    }

    #[test]
    fn steady_values() {
        let (_, m) = steady_report(&cfg("")).unwrap();
        assert!((m.concurrence - 0.2).abs() < 1e-12);
        assert!((m.min_hs - 0.02).abs() < 1e-12);
    }
}
