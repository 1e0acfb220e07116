//! Parameter sweeps over a cartesian grid of config values.

use milburn_core::par::Exec;

use crate::config::{ConfigPatch, RunConfig};
use crate::error::{LabError, Result};
use crate::events::{detect_events, DEATH_TOL};
use crate::output::fmt_g12;
use crate::run::{run_scenario, steady_report};

/// End of the window for the time-averaged concurrence column.
pub const MEAN_WINDOW: f64 = 20.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: String,
    pub values: Vec<String>,
}

impl Axis {
    /// `name=v1,v2,…`. Values are checked against the key up front.
    pub fn parse(spec: &str) -> Result<Axis> {
        let (key, vals) = spec
            .split_once('=')
            .ok_or_else(|| LabError::Config(format!("grid axis '{spec}' must look like name=v1,v2")))?;
        let key = key.trim().to_string();
        let values: Vec<String> = vals
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if values.is_empty() {
            return Err(LabError::Config(format!("grid axis '{key}' has no values")));
        }
        for v in &values {
            ConfigPatch::default().set(&key, v)?;
        }
        Ok(Axis { key, values })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// One value per axis, as given.
    pub cell: Vec<String>,
    pub steady_concurrence: Option<f64>,
    pub steady_min_hs: Option<f64>,
    pub steady_min_trace: Option<f64>,
    pub sudden_death_time: Option<f64>,
    pub mean_concurrence: Option<f64>,
    pub skipped: Option<String>,
}

/// Cells in lexicographic order of the axis indices, last axis fastest.
pub fn grid_cells(axes: &[Axis]) -> Vec<Vec<usize>> {
    let mut cells = vec![Vec::new()];
    for axis in axes {
        cells = cells
            .into_iter()
            .flat_map(|c| {
                (0..axis.values.len()).map(move |i| {
                    let mut c = c.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    cells
}

fn run_cell(base: &ConfigPatch, axes: &[Axis], idx: &[usize]) -> SweepRow {
    let cell: Vec<String> = axes.iter().zip(idx).map(|(a, &i)| a.values[i].clone()).collect();
    let mut row = SweepRow {
        cell,
        steady_concurrence: None,
        steady_min_hs: None,
        steady_min_trace: None,
        sudden_death_time: None,
        mean_concurrence: None,
        skipped: None,
    };
    let mut reasons = Vec::new();
    let cfg = (|| {
        let mut patch = base.clone();
        for (a, v) in axes.iter().zip(&row.cell) {
            patch.set(&a.key, v)?;
        }
        patch.resolve()
    })();
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            row.skipped = Some(e.to_string());
            return row;
        }
    };
    match steady_report(&cfg) {
        Ok((_, m)) => {
            row.steady_concurrence = Some(m.concurrence);
            row.steady_min_hs = Some(m.min_hs);
            row.steady_min_trace = Some(m.min_trace);
        }
        Err(e) => reasons.push(format!("steady: {e}")),
    }
    match run_scenario(&cfg, Exec::Sequential) {
        Ok(r) => row.sudden_death_time = detect_events(&r.samples, DEATH_TOL, row.steady_min_hs).sudden_death_time,
        Err(e) => reasons.push(format!("trajectory: {e}")),
    }
    let window = RunConfig {
        t_max: MEAN_WINDOW,
        dt_sample: cfg.dt_sample.min(MEAN_WINDOW),
        ode_dt: cfg.ode_dt.min(cfg.dt_sample.min(MEAN_WINDOW)),
        ..cfg
    };
    match run_scenario(&window, Exec::Sequential) {
        Ok(r) => row.mean_concurrence = Some(time_average(&r.samples)),
        Err(e) => reasons.push(format!("mean: {e}")),
    }
    if !reasons.is_empty() {
        row.skipped = Some(reasons.join("; "));
    }
    row
}

/// Trapezoidal time average of `C`.
fn time_average(s: &[milburn_core::CorrelationSample]) -> f64 {
    let span = s.last().map_or(0.0, |l| l.t) - s.first().map_or(0.0, |f| f.t);
    if span <= 0.0 {
        return s.first().map_or(0.0, |f| f.concurrence);
    }
    s.windows(2)
        .map(|w| 0.5 * (w[0].concurrence + w[1].concurrence) * (w[1].t - w[0].t))
        .sum::<f64>()
        / span
}

/// One row per cell, in [`grid_cells`] order whatever the execution order.
/// Cells that fail carry the reason instead of aborting the sweep.
pub fn sweep(base: &ConfigPatch, axes: &[Axis], exec: Exec) -> Result<Vec<SweepRow>> {
    if axes.is_empty() {
        return Err(LabError::Config("sweep needs at least one --grid axis".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for a in axes {
        if !seen.insert(a.key.as_str()) {
            return Err(LabError::Config(format!("grid axis '{}' given twice", a.key)));
        }
    }
    let cells = grid_cells(axes);
    Ok(exec.map_indexed(cells.len(), |k| run_cell(base, axes, &cells[k])))
}

pub fn sweep_csv(axes: &[Axis], rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let err = |e: csv::Error| LabError::Config(format!("CSV encoding failed: {e}"));
    let mut header: Vec<String> = axes.iter().map(|a| a.key.clone()).collect();
    header.extend(
        [
            "steady_concurrence",
            "steady_min_hs",
            "steady_min_trace",
            "sudden_death_time",
            "mean_concurrence",
            "skipped",
        ]
        .map(String::from),
    );
    w.write_record(&header).map_err(err)?;
    let opt = |v: Option<f64>| v.map(fmt_g12).unwrap_or_default();
    for r in rows {
        let mut rec = r.cell.clone();
        rec.extend([
            opt(r.steady_concurrence),
            opt(r.steady_min_hs),
            opt(r.steady_min_trace),
            opt(r.sudden_death_time),
            opt(r.mean_concurrence),
            r.skipped.clone().unwrap_or_default(),
        ]);
        w.write_record(&rec).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Config(format!("CSV encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}
