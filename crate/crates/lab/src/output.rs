//! CSV and JSON emission of correlation series.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use milburn_core::{CorrelationSample, Operator4};

use crate::config::Format;
use crate::error::{LabError, Result};

pub const BASE_COLUMNS: [&str; 5] = ["t", "concurrence", "min_hs", "min_trace", "purity"];
pub const ELEMENT_COLUMNS: [&str; 8] = ["re_r14", "im_r14", "re_r23", "im_r23", "r11", "r22", "r33", "r44"];

/// C's `%.12g`. Negative zero prints as `0`.
pub fn fmt_g12(x: f64) -> String {
    const P: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..P).contains(&exp) {
        let mant = strip_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The eight element columns, in [`ELEMENT_COLUMNS`] order.
pub fn element_values(rho: &Operator4) -> [f64; 8] {
    [
        rho[(0, 3)].re,
        rho[(0, 3)].im,
        rho[(1, 2)].re,
        rho[(1, 2)].im,
        rho[(0, 0)].re,
        rho[(1, 1)].re,
        rho[(2, 2)].re,
        rho[(3, 3)].re,
    ]
}

/// A correlation series plus, optionally, the states behind it.
pub struct Series<'a> {
    pub samples: &'a [CorrelationSample],
    pub states: Option<&'a [Operator4]>,
}

impl Series<'_> {
    pub fn header(&self) -> Vec<&'static str> {
        let mut h = BASE_COLUMNS.to_vec();
        if self.states.is_some() {
            h.extend(ELEMENT_COLUMNS);
        }
        h
    }

    fn row(&self, k: usize) -> Vec<f64> {
        let s = &self.samples[k];
        let mut row = vec![s.t, s.concurrence, s.min_hs, s.min_trace, s.purity];
        if let Some(states) = self.states {
            row.extend(element_values(&states[k]));
        }
        row
    }

    fn check(&self) -> Result<()> {
        if self.samples.is_empty() {
            return Err(LabError::Config("cannot write an empty series".into()));
        }
        if let Some(st) = self.states {
            if st.len() != self.samples.len() {
                return Err(LabError::Config("states and samples differ in length".into()));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        self.check()?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let csv_err = |e: csv::Error| LabError::Config(format!("CSV encoding failed: {e}"));
        w.write_record(self.header()).map_err(csv_err)?;
        for k in 0..self.samples.len() {
            w.write_record(self.row(k).into_iter().map(fmt_g12)).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| LabError::Config(format!("CSV encoding failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("CSV output is ASCII"))
    }

    /// An array of objects keyed by the CSV column names. Numbers carry the
    /// same 12 significant digits as the CSV.
    pub fn to_json(&self) -> Result<String> {
        self.check()?;
        let header = self.header();
        let rows: Vec<Value> = (0..self.samples.len())
            .map(|k| {
                let obj: Map<String, Value> = header
                    .iter()
                    .zip(self.row(k))
                    .map(|(name, v)| (name.to_string(), json_number(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&Value::Array(rows))
            .map_err(|e| LabError::Config(format!("JSON encoding failed: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn json_number(v: f64) -> Value {
    fmt_g12(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// `path` or stdout when `None`.
pub fn write_text(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| LabError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| LabError::io("<stdout>", e))
        }
    }
}

pub fn write_series(series: &Series<'_>, format: Format, path: Option<&Path>) -> Result<()> {
    write_text(&series.render(format)?, path)
}
