//! Run configuration: a flat `key = value` file or a JSON object, overlaid
//! by command-line flags, then resolved against derived defaults.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use milburn_core::evolve::EngineTag;
use milburn_core::states::{ScenarioKind, ScenarioSpec, XState};
use milburn_core::{ModelParams, C64};

use crate::error::{LabError, Result};

/// Couplings shared by all published figure panels, with `Jz = 1`.
pub fn default_params() -> ModelParams {
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Correlations,
    Elements,
    Purity,
}

/// The correlation and purity columns are always written (the CSV header
/// is fixed); `elements` adds the eight density-matrix columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outputs(pub BTreeSet<OutputKind>);

impl Outputs {
    pub fn elements(&self) -> bool {
        self.0.contains(&OutputKind::Elements)
    }
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs([OutputKind::Correlations, OutputKind::Purity].into_iter().collect())
    }
}

impl FromStr for Outputs {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        let mut set = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            set.insert(match part.to_ascii_lowercase().as_str() {
                "correlations" => OutputKind::Correlations,
                "elements" => OutputKind::Elements,
                "purity" => OutputKind::Purity,
                other => {
                    return Err(LabError::Config(format!(
                        "unknown output '{other}' (expected correlations|elements|purity)"
                    )))
                }
            });
        }
        if set.is_empty() {
            return Err(LabError::Config("outputs list is empty".into()));
        }
        Ok(Outputs(set))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(LabError::Config(format!("unknown format '{other}' (expected csv|json)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub params: ModelParams,
    pub scenario: ScenarioSpec,
    pub engine: EngineTag,
    pub t_max: f64,
    pub dt_sample: f64,
    pub ode_dt: f64,
    pub outputs: Outputs,
    pub format: Format,
    pub out_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| LabError::Config(e.to_string()))?;
        self.scenario.validate().map_err(|e| LabError::Config(e.to_string()))?;
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(LabError::Config(format!("t_max = {} must be > 0", self.t_max)));
        }
        if !(self.dt_sample > 0.0 && self.dt_sample <= self.t_max) {
            return Err(LabError::Config(format!(
                "dt_sample = {} must satisfy 0 < dt_sample <= t_max = {}",
                self.dt_sample, self.t_max
            )));
        }
        if !(self.ode_dt > 0.0 && self.ode_dt <= self.dt_sample) {
            return Err(LabError::Config(format!(
                "ode_dt = {} must satisfy 0 < ode_dt <= dt_sample = {}",
                self.ode_dt, self.dt_sample
            )));
        }
        Ok(())
    }
}

/// `π / min(μ, η)`, the slower oscillation period, when both blocks
/// oscillate.
pub fn slow_period(p: &ModelParams) -> Option<f64> {
    let f = p.mu().min(p.eta());
    (f > 1e-12).then(|| std::f64::consts::PI / f)
}

/// `25 / (2γ·min(μ², η²))`, where every damping factor is below `e^{−25}`.
/// Without damping (γ = 0 or a frozen block) twenty slow periods, or 20.
pub fn default_t_max(p: &ModelParams) -> f64 {
    let f = p.mu().min(p.eta());
    if p.gamma > 0.0 && f > 1e-12 {
        25.0 / (2.0 * p.gamma * f * f)
    } else {
        slow_period(p).map_or(20.0, |per| 20.0 * per)
    }
}

/// One period over 64, else 0.01.
pub fn default_dt_sample(p: &ModelParams) -> f64 {
    slow_period(p).map_or(0.01, |per| per / 64.0)
}

/// Partially specified configuration. Later layers override earlier ones
/// through [`ConfigPatch::overlay`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigPatch {
    pub j_plus: Option<f64>,
    pub j_minus: Option<f64>,
    pub j_z: Option<f64>,
    pub dm: Option<f64>,
    pub field: Option<f64>,
    pub inhomogeneity: Option<f64>,
    pub gamma: Option<f64>,
    pub scenario: Option<ScenarioKind>,
    pub p: Option<f64>,
    pub raw_state: Option<XState>,
    pub engine: Option<EngineTag>,
    pub t_max: Option<f64>,
    pub dt_sample: Option<f64>,
    pub ode_dt: Option<f64>,
    pub outputs: Option<Outputs>,
    pub format: Option<Format>,
    pub out_path: Option<PathBuf>,
}

fn number(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| LabError::Config(format!("{key}: '{value}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(LabError::Config(format!("{key}: '{value}' is not finite")))
    }
}

/// `a,b,c,d,w,z` (real coherences) or `a,b,c,d,w_re,w_im,z_re,z_im`.
fn parse_raw_state(value: &str) -> Result<XState> {
    let v: Vec<f64> = value
        .split(',')
        .map(|s| number("raw_state", s))
        .collect::<Result<_>>()?;
    let (w, z) = match v.len() {
        6 => (C64::new(v[4], 0.0), C64::new(v[5], 0.0)),
        8 => (C64::new(v[4], v[5]), C64::new(v[6], v[7])),
        n => {
            return Err(LabError::Config(format!(
                "raw_state needs 6 or 8 comma-separated numbers, got {n}"
            )))
        }
    };
    Ok(XState {
        a: v[0],
        b: v[1],
        c: v[2],
        d: v[3],
        w,
        z,
    })
}

impl ConfigPatch {
    /// Keys are the [`RunConfig`] field names; the command-line spellings
    /// (`jp`, `jm`, `jz`, `lambda`, `out`, dashes for underscores) are
    /// accepted too.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key_norm = key.trim().to_ascii_lowercase().replace('-', "_");
        match key_norm.as_str() {
            "j_plus" | "jp" => self.j_plus = Some(number(key, value)?),
            "j_minus" | "jm" => self.j_minus = Some(number(key, value)?),
            "j_z" | "jz" => self.j_z = Some(number(key, value)?),
            "dm" | "d" => self.dm = Some(number(key, value)?),
            "field" | "b" => self.field = Some(number(key, value)?),
            "inhomogeneity" | "lambda" => self.inhomogeneity = Some(number(key, value)?),
            "gamma" => self.gamma = Some(number(key, value)?),
            "scenario" | "kind" => {
                self.scenario = Some(value.parse().map_err(|e: milburn_core::Error| LabError::Config(e.to_string()))?)
            }
            "p" => self.p = Some(number(key, value)?),
            "raw_state" => self.raw_state = Some(parse_raw_state(value)?),
            "engine" => {
                self.engine = Some(value.parse().map_err(|e: milburn_core::Error| LabError::Config(e.to_string()))?)
            }
            "t_max" => self.t_max = Some(number(key, value)?),
            "dt_sample" => self.dt_sample = Some(number(key, value)?),
            "ode_dt" => self.ode_dt = Some(number(key, value)?),
            "outputs" => self.outputs = Some(value.parse()?),
            "format" => self.format = Some(value.parse()?),
            "out_path" | "out" => self.out_path = Some(PathBuf::from(value.trim())),
            _ => return Err(LabError::Config(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// `key = value` lines; `#` starts a comment.
    pub fn parse_flat(text: &str) -> Result<Self> {
        let mut patch = ConfigPatch::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| LabError::Config(format!("line {}: expected key = value", n + 1)))?;
            patch.set(k, v.trim().trim_matches('"'))?;
        }
        Ok(patch)
    }

    /// A JSON object with the [`RunConfig`] field names. `params` and
    /// `scenario` may be nested objects or flattened into the top level.
    pub fn parse_json(text: &str) -> Result<Self> {
        let root: Value =
            serde_json::from_str(text).map_err(|e| LabError::Config(format!("invalid JSON config: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| LabError::Config("JSON config must be an object".into()))?;
        let mut patch = ConfigPatch::default();
        for (key, value) in obj {
            match (key.as_str(), value) {
                ("params", Value::Object(inner)) => {
                    for (k, v) in inner {
                        patch.set_json(k, v)?;
                    }
                }
                ("scenario", Value::Object(inner)) => {
                    for (k, v) in inner {
                        let k = if k == "kind" { "scenario" } else { k.as_str() };
                        patch.set_json(k, v)?;
                    }
                }
                _ => patch.set_json(key, value)?,
            }
        }
        Ok(patch)
    }

    fn set_json(&mut self, key: &str, value: &Value) -> Result<()> {
        match value {
            Value::Null => Ok(()),
            Value::String(s) => self.set(key, s),
            Value::Number(n) => self.set(key, &n.to_string()),
            Value::Array(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                self.set(key, &parts.join(","))
            }
            Value::Object(_) if key == "raw_state" => {
                let s: XState = serde_json::from_value(value.clone())
                    .map_err(|e| LabError::Config(format!("raw_state: {e}")))?;
                self.raw_state = Some(s);
                Ok(())
            }
            other => Err(LabError::Config(format!("{key}: unsupported value {other}"))),
        }
    }

    /// JSON when the first non-blank character is `{`, flat text otherwise.
    pub fn parse_str(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_flat(text)
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Self::parse_str(&text)
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: ConfigPatch) -> ConfigPatch {
        ConfigPatch {
            j_plus: top.j_plus.or(self.j_plus),
            j_minus: top.j_minus.or(self.j_minus),
            j_z: top.j_z.or(self.j_z),
            dm: top.dm.or(self.dm),
            field: top.field.or(self.field),
            inhomogeneity: top.inhomogeneity.or(self.inhomogeneity),
            gamma: top.gamma.or(self.gamma),
            scenario: top.scenario.or(self.scenario),
            p: top.p.or(self.p),
            raw_state: top.raw_state.or(self.raw_state),
            engine: top.engine.or(self.engine),
            t_max: top.t_max.or(self.t_max),
            dt_sample: top.dt_sample.or(self.dt_sample),
            ode_dt: top.ode_dt.or(self.ode_dt),
            outputs: top.outputs.or(self.outputs),
            format: top.format.or(self.format),
            out_path: top.out_path.or(self.out_path),
        }
    }

    pub fn params(&self) -> ModelParams {
        let d = default_params();
        ModelParams {
            j_plus: self.j_plus.unwrap_or(d.j_plus),
            j_minus: self.j_minus.unwrap_or(d.j_minus),
            j_z: self.j_z.unwrap_or(d.j_z),
            dm: self.dm.unwrap_or(d.dm),
            field: self.field.unwrap_or(d.field),
            inhomogeneity: self.inhomogeneity.unwrap_or(d.inhomogeneity),
            gamma: self.gamma.unwrap_or(d.gamma),
        }
    }

    /// Fill unset fields with defaults and validate.
    pub fn resolve(&self) -> Result<RunConfig> {
        let params = self.params();
        params.validate().map_err(|e| LabError::Config(e.to_string()))?;
        let kind = match (self.scenario, self.raw_state) {
            (Some(k), _) => k,
            (None, Some(_)) => ScenarioKind::Raw,
            (None, None) => ScenarioKind::BellPhi,
        };
        let scenario = ScenarioSpec {
            kind,
            p: self.p.unwrap_or(1.0),
            raw_state: if kind == ScenarioKind::Raw { self.raw_state } else { None },
        };
        let t_max = self.t_max.unwrap_or_else(|| default_t_max(&params));
        let dt_sample = self
            .dt_sample
            .unwrap_or_else(|| default_dt_sample(&params).min(t_max));
        let ode_dt = self.ode_dt.unwrap_or_else(|| dt_sample.min(1e-3));
        let cfg = RunConfig {
            params,
            scenario,
            engine: self.engine.unwrap_or(EngineTag::Spectral),
            t_max,
            dt_sample,
            ode_dt,
            outputs: self.outputs.clone().unwrap_or_default(),
            format: self.format.unwrap_or_default(),
            out_path: self.out_path.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_slow_block() {
        let cfg = ConfigPatch::default().resolve().unwrap();
        let mu = 1.25f64.sqrt();
        assert!((cfg.t_max - 25.0 / (2.0 * 0.05 * 1.25)).abs() < 1e-12);
        assert!((cfg.dt_sample - std::f64::consts::PI / mu / 64.0).abs() < 1e-15);
        assert_eq!(cfg.ode_dt, 1e-3);
        assert_eq!(cfg.params.j_z, 1.0);
        assert_eq!(cfg.engine, EngineTag::Spectral);
        assert_eq!(cfg.scenario.kind, ScenarioKind::BellPhi);
    }

    #[test]
    fn flat_and_json_agree() {
        let flat = ConfigPatch::parse_str(
            "# comment\nscenario = bell_psi\np = 0.6\ngamma=0.1\nlambda = 0.25\nengine = kraus\noutputs = correlations,elements\n",
        )
        .unwrap();
        let json = ConfigPatch::parse_str(
            r#"{"params": {"gamma": 0.1, "inhomogeneity": 0.25}, "scenario": {"kind": "bell-psi", "p": 0.6},
                "engine": "kraus", "outputs": ["correlations", "elements"]}"#,
        )
        .unwrap();
        assert_eq!(flat, json);
        let cfg = flat.resolve().unwrap();
        assert_eq!(cfg.scenario.kind, ScenarioKind::BellPsi);
        assert!(cfg.outputs.elements());
    }

    #[test]
    fn overlay_prefers_top() {
        let base = ConfigPatch::parse_flat("gamma = 0.1\np = 0.5").unwrap();
        let mut top = ConfigPatch::default();
        top.set("gamma", "0.3").unwrap();
        let merged = base.overlay(top);
        assert_eq!(merged.gamma, Some(0.3));
        assert_eq!(merged.p, Some(0.5));
    }

    #[test]
    fn raw_state_parsing() {
        let patch = ConfigPatch::parse_flat("raw_state = 0.5,0,0,0.5,0.5,0").unwrap();
        let cfg = patch.resolve().unwrap();
        assert_eq!(cfg.scenario.kind, ScenarioKind::Raw);
        let bad = ConfigPatch::parse_flat("raw_state = 0.1,0.4,0.4,0.1,0.2,0").unwrap();
        assert!(matches!(bad.resolve(), Err(LabError::Config(_))));
    }

    #[test]
    fn invalid_values_are_config_errors() {
        for text in ["gamma = -1", "t_max = 0", "engine = rk4", "bogus = 1", "p = 1.5", "dt_sample = 5\nt_max = 1"] {
            let r = ConfigPatch::parse_flat(text).and_then(|p| p.resolve());
            assert!(matches!(r, Err(LabError::Config(_))), "{text}");
        }
    }

    #[test]
    fn undamped_defaults() {
        let mut patch = ConfigPatch::default();
        patch.set("gamma", "0").unwrap();
        let cfg = patch.resolve().unwrap();
        let per = std::f64::consts::PI / 1.25f64.sqrt();
        assert!((cfg.t_max - 20.0 * per).abs() < 1e-12);
    }
}
