//! Front end for the intrinsic-decoherence two-qubit model: scenario runs,
//! parameter sweeps, figure series, steady-state reports and event
//! detection, written as CSV or JSON.

pub mod config;
pub mod error;
pub mod events;
pub mod figures;
pub mod output;
pub mod report;
pub mod run;
pub mod sweep;

pub use config::{ConfigPatch, Format, RunConfig};
pub use error::{LabError, Result};
pub use events::{detect_events, EventReport};
pub use run::{run_scenario, RunResult};

use milburn_core::model::analytic_spectrum;
use milburn_core::{ModelParams, XState};

use output::fmt_g12;

/// Eigenvalues and eigenvectors as CSV: one row per eigenpair with the
/// vector components in basis order `00, 01, 10, 11`.
pub fn spectrum_csv(p: &ModelParams) -> Result<String> {
    p.validate().map_err(|e| LabError::Config(e.to_string()))?;
    let s = analytic_spectrum(p);
    let mut out = String::from("k,energy,re_v00,im_v00,re_v01,im_v01,re_v10,im_v10,re_v11,im_v11\n");
    for k in 0..4 {
        let mut row = vec![(k + 1).to_string(), fmt_g12(s.energies[k])];
        for c in s.vectors[k] {
            row.push(fmt_g12(c.re));
            row.push(fmt_g12(c.im));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// `key,value` lines for a steady state and its measures.
pub fn steady_csv(st: &XState, m: &milburn_core::CorrelationSample) -> String {
    let rows = [
        ("r11", st.a),
        ("r22", st.b),
        ("r33", st.c),
        ("r44", st.d),
        ("re_r14", st.w.re),
        ("im_r14", st.w.im),
        ("re_r23", st.z.re),
        ("im_r23", st.z.im),
        ("concurrence", m.concurrence),
        ("min_hs", m.min_hs),
        ("min_trace", m.min_trace),
        ("purity", m.purity),
    ];
    let mut out = String::from("quantity,value\n");
    for (k, v) in rows {
        out.push_str(&format!("{k},{}\n", fmt_g12(v)));
    }
    out
}
