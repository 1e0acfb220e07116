//! Parameter sets of the five published figure series.

use std::path::{Path, PathBuf};

use milburn_core::evolve::EngineTag;
use milburn_core::par::Exec;
use milburn_core::states::{ScenarioKind, ScenarioSpec, XState};
use milburn_core::{ModelParams, C64};

use crate::config::{default_params, Format, OutputKind, Outputs, RunConfig};
use crate::error::{LabError, Result};
use crate::run::run_scenario;

pub const FIGURE_T_MAX: f64 = 40.0;
pub const FIGURE_DT: f64 = 0.1;
pub const FIGURE_GAMMAS: [f64; 3] = [0.05, 0.1, 0.3];

#[derive(Debug, Clone)]
pub struct Panel {
    /// File stem: `fig{N}_{label}`.
    pub label: String,
    pub cfg: RunConfig,
}

impl Panel {
    pub fn file_name(&self) -> String {
        format!("{}.csv", self.label)
    }
}

fn panel(label: String, params: ModelParams, scenario: ScenarioSpec) -> Panel {
    Panel {
        label,
        cfg: RunConfig {
            params,
            scenario,
            engine: EngineTag::Spectral,
            t_max: FIGURE_T_MAX,
            dt_sample: FIGURE_DT,
            ode_dt: 1e-3,
            outputs: Outputs([OutputKind::Correlations, OutputKind::Elements, OutputKind::Purity].into_iter().collect()),
            format: Format::Csv,
            out_path: None,
        },
    }
}

/// The prod00 mixture with the printed coefficients `a = (1+p)/4`,
/// `b = c = d = (1−p)/4`, rescaled to unit trace.
pub fn printed_prod00(p: f64) -> XState {
    let norm = 4.0 - 2.0 * p;
    XState {
        a: (1.0 + p) / norm,
        b: (1.0 - p) / norm,
        c: (1.0 - p) / norm,
        d: (1.0 - p) / norm,
        w: C64::new(0.0, 0.0),
        z: C64::new(0.0, 0.0),
    }
}

fn gamma_series(n: u8, spec: ScenarioSpec, prefix: &str) -> Vec<Panel> {
    FIGURE_GAMMAS
        .iter()
        .map(|&g| {
            panel(
                format!("fig{n}_{prefix}gamma{g}"),
                ModelParams { gamma: g, ..default_params() },
                spec,
            )
        })
        .collect()
}

/// Panels of figure `n` (1 to 5).
pub fn figure_panels(n: u8) -> Result<Vec<Panel>> {
    let base = default_params();
    Ok(match n {
        1 => {
            let spec = ScenarioSpec::new(ScenarioKind::Prod00, 1.0);
            vec![
                panel(
                    "fig1_top".into(),
                    ModelParams {
                        inhomogeneity: 0.0,
                        dm: 0.0,
                        field: 0.0,
                        ..base
                    },
                    spec,
                ),
                panel("fig1_bottom".into(), ModelParams { dm: 3.0, ..base }, spec),
            ]
        }
        2 => gamma_series(2, ScenarioSpec::new(ScenarioKind::BellPhi, 1.0), ""),
        3 => gamma_series(3, ScenarioSpec::new(ScenarioKind::BellPsi, 1.0), ""),
        4 => gamma_series(4, ScenarioSpec::new(ScenarioKind::BellPhi, 0.6), ""),
        5 => {
            let mut v = gamma_series(5, ScenarioSpec::new(ScenarioKind::Prod00, 0.6), "");
            v.extend(gamma_series(5, ScenarioSpec::raw(printed_prod00(0.6)), "printed_"));
            v
        }
        _ => return Err(LabError::Config(format!("figure {n} does not exist (expected 1..5)"))),
    })
}

/// Render every panel of figure `n` to CSV, in panel order.
pub fn render_figure(n: u8, exec: Exec) -> Result<Vec<(Panel, String)>> {
    figure_panels(n)?
        .into_iter()
        .map(|p| {
            let r = run_scenario(&p.cfg, exec)?;
            let text = r.render(&p.cfg)?;
            Ok((p, text))
        })
        .collect()
}

/// Write the panels into `dir` and return the paths.
pub fn write_figure(n: u8, dir: &Path, exec: Exec) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    render_figure(n, exec)?
        .into_iter()
        .map(|(p, text)| {
            let path = dir.join(p.file_name());
            std::fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| figure_panels(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 3, 3, 6]);
        assert!(figure_panels(6).is_err());
    }

    #[test]
    fn printed_variant_is_a_state() {
        let s = printed_prod00(0.6);
        s.validate().unwrap();
        assert!((s.a - 4.0 / 7.0).abs() < 1e-15);
        assert!((printed_prod00(1.0).a - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_panels_valid() {
        for n in 1..=5 {
            for p in figure_panels(n).unwrap() {
                p.cfg.validate().unwrap();
            }
        }
    }
}
