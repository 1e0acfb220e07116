//! Steady-state values quoted in the literature for this model, set against
//! direct evaluation. Disagreements are reported, never reconciled.

use std::fmt;

use milburn_core::evolve::steady_state;
use milburn_core::measures::correlation_sample;
use milburn_core::states::{make_initial_state, ScenarioKind, ScenarioSpec};
use milburn_core::ModelParams;

use crate::config::default_params;
use crate::error::Result;

/// Agreement threshold between a quoted and a derived value.
pub const AGREE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Concurrence,
    MinHs,
    MinTrace,
}

impl Quantity {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::Concurrence => "C",
            Quantity::MinHs => "N2",
            Quantity::MinTrace => "N1",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCheck {
    pub case: &'static str,
    pub quantity: Quantity,
    pub reference: f64,
    pub derived: f64,
}

impl ReferenceCheck {
    pub fn agrees(&self) -> bool {
        (self.reference - self.derived).abs() <= AGREE_TOL
    }
}

impl fmt::Display for ReferenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: steady {} reference {} derived {:.6} -> {}",
            self.case,
            self.quantity.symbol(),
            self.reference,
            self.derived,
            if self.agrees() { "agrees" } else { "DISCREPANCY (unreconciled)" }
        )
    }
}

struct Case {
    name: &'static str,
    spec: ScenarioSpec,
    params: ModelParams,
    quoted: &'static [(Quantity, f64)],
}

fn cases() -> Vec<Case> {
    let base = default_params();
    vec![
        Case {
            name: "bell-phi p=1, lambda=0.5 D=1 B=1",
            spec: ScenarioSpec::new(ScenarioKind::BellPhi, 1.0),
            params: base,
            quoted: &[(Quantity::Concurrence, 0.2), (Quantity::MinHs, 0.025)],
        },
        Case {
            name: "prod00 p=1, lambda=0.5 D=3 B=1",
            spec: ScenarioSpec::new(ScenarioKind::Prod00, 1.0),
            params: ModelParams { dm: 3.0, ..base },
            quoted: &[(Quantity::Concurrence, 0.236), (Quantity::MinHs, 0.025)],
        },
        // Quoted for "MINs" without saying which norm; both are checked.
        Case {
            name: "bell-phi p=0.6, lambda=0.5 D=1 B=1",
            spec: ScenarioSpec::new(ScenarioKind::BellPhi, 0.6),
            params: base,
            quoted: &[(Quantity::MinHs, 0.049), (Quantity::MinTrace, 0.049)],
        },
    ]
}

pub fn reference_checks() -> Result<Vec<ReferenceCheck>> {
    let mut out = Vec::new();
    for c in cases() {
        let st = steady_state(&make_initial_state(&c.spec)?, &c.params)?;
        let m = correlation_sample(f64::INFINITY, &st.to_matrix());
        for &(quantity, reference) in c.quoted {
            let derived = match quantity {
                Quantity::Concurrence => m.concurrence,
                Quantity::MinHs => m.min_hs,
                Quantity::MinTrace => m.min_trace,
            };
            out.push(ReferenceCheck {
                case: c.name,
                quantity,
                reference,
                derived,
            });
        }
    }
    Ok(out)
}

/// Notes on quoted relations that do not hold as written.
pub const RELATION_NOTES: [&str; 1] = [
    "quoted relation C = N1/2 does not hold: single-block states give C = N1 and N2 = C^2/2 (factor 1/2 treated as erratum)",
];

pub fn render_reference_report() -> Result<String> {
    let mut s = String::new();
    for c in reference_checks()? {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    for n in RELATION_NOTES {
        s.push_str("note: ");
        s.push_str(n);
        s.push('\n');
    }
    Ok(s)
}
