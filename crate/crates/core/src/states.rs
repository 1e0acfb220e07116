//! X-states and the named initial scenarios.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{validate_density, Operator4, C64};

/// Tolerance on the X-state invariants (unit trace, block positivity).
pub const XSTATE_TOL: f64 = 1e-12;

/// ```text
///     ⎡ a   0   0   w ⎤
/// ρ = ⎢ 0   b   z   0 ⎥
///     ⎢ 0   z*  c   0 ⎥
///     ⎣ w*  0   0   d ⎦
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct XState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `ρ₁₄`.
    pub w: C64,
    /// `ρ₂₃`.
    pub z: C64,
}

impl XState {
    pub fn maximally_mixed() -> Self {
        XState {
            a: 0.25,
            b: 0.25,
            c: 0.25,
            d: 0.25,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let report = validate_density(&self.to_matrix(), XSTATE_TOL);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDensity(report))
        }
    }

    /// Embed without checking the invariants.
    pub fn to_matrix(&self) -> Operator4 {
        let mut m = Operator4::from_real_diagonal([self.a, self.b, self.c, self.d]);
        m[(0, 3)] = self.w;
        m[(3, 0)] = self.w.conj();
        m[(1, 2)] = self.z;
        m[(2, 1)] = self.z.conj();
        m
    }

    /// Read an X-state out of a matrix whose non-X entries are at most `tol`
    /// and whose diagonal is real within `tol`.
    pub fn from_matrix(m: &Operator4, tol: f64) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                let on_x = i == j || i + j == 3;
                if !on_x && m[(i, j)].norm() > tol {
                    return Err(Error::InvalidState(format!(
                        "entry ({}, {}) = {:.3e} is outside the X pattern",
                        i + 1,
                        j + 1,
                        m[(i, j)].norm()
                    )));
                }
            }
            if m[(i, i)].im.abs() > tol {
                return Err(Error::InvalidState(format!("diagonal entry {} is not real", i + 1)));
            }
        }
        Ok(XState {
            a: m[(0, 0)].re,
            b: m[(1, 1)].re,
            c: m[(2, 2)].re,
            d: m[(3, 3)].re,
            w: m[(0, 3)],
            z: m[(1, 2)],
        })
    }

    /// Largest non-X entry of `m`.
    pub fn off_pattern_magnitude(m: &Operator4) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(m[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        self.a + self.b + self.c + self.d
    }

    pub fn max_abs_diff(&self, other: &XState) -> f64 {
        [
            (self.a - other.a).abs(),
            (self.b - other.b).abs(),
            (self.c - other.c).abs(),
            (self.d - other.d).abs(),
            (self.w - other.w).norm(),
            (self.z - other.z).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Checked embedding.
pub fn xstate_to_matrix(s: &XState) -> Result<Operator4> {
    s.validate()?;
    Ok(s.to_matrix())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ScenarioKind {
    Prod00,
    Prod01,
    Prod10,
    Prod11,
    BellPhi,
    BellPsi,
    Raw,
}

impl ScenarioKind {
    pub const NAMED: [ScenarioKind; 6] = [
        ScenarioKind::Prod00,
        ScenarioKind::Prod01,
        ScenarioKind::Prod10,
        ScenarioKind::Prod11,
        ScenarioKind::BellPhi,
        ScenarioKind::BellPsi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Prod00 => "prod00",
            ScenarioKind::Prod01 => "prod01",
            ScenarioKind::Prod10 => "prod10",
            ScenarioKind::Prod11 => "prod11",
            ScenarioKind::BellPhi => "bell-phi",
            ScenarioKind::BellPsi => "bell-psi",
            ScenarioKind::Raw => "raw",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        [ScenarioKind::Raw]
            .into_iter()
            .chain(ScenarioKind::NAMED)
            .find(|k| k.name() == norm)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown scenario '{s}' (expected prod00|prod01|prod10|prod11|bell-phi|bell-psi|raw)"
                ))
            })
    }
}

impl TryFrom<String> for ScenarioKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ScenarioKind> for String {
    fn from(k: ScenarioKind) -> String {
        k.name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    /// Weight of the pure state in `p|Φ⟩⟨Φ| + (1 − p)𝟙/4`.
    pub p: f64,
    /// Used only by [`ScenarioKind::Raw`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_state: Option<XState>,
}

impl ScenarioSpec {
    pub fn new(kind: ScenarioKind, p: f64) -> Self {
        ScenarioSpec { kind, p, raw_state: None }
    }

    pub fn raw(state: XState) -> Self {
        ScenarioSpec {
            kind: ScenarioKind::Raw,
            p: 1.0,
            raw_state: Some(state),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidArgument(format!("p = {} must lie in [0, 1]", self.p)));
        }
        match (self.kind, &self.raw_state) {
            (ScenarioKind::Raw, None) => {
                Err(Error::InvalidArgument("raw scenario needs an explicit state".into()))
            }
            (ScenarioKind::Raw, Some(s)) => s.validate(),
            _ => Ok(()),
        }
    }
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        ScenarioSpec::new(ScenarioKind::BellPhi, 1.0)
    }
}

/// `p|Φ⟩⟨Φ| + (1 − p)𝟙/4` for the named pure state `|Φ⟩`, or the raw state.
pub fn make_initial_state(spec: &ScenarioSpec) -> Result<XState> {
    spec.validate()?;
    let p = spec.p;
    let hi = (1.0 + 3.0 * p) / 4.0;
    let lo = (1.0 - p) / 4.0;
    let product = |slot: usize| {
        let mut pops = [lo; 4];
        pops[slot] = hi;
        XState {
            a: pops[0],
            b: pops[1],
            c: pops[2],
            d: pops[3],
            ..Default::default()
        }
    };
    let (bell_hi, bell_lo) = ((1.0 + p) / 4.0, (1.0 - p) / 4.0);
    let coherence = C64::new(p / 2.0, 0.0);
    Ok(match spec.kind {
        ScenarioKind::Prod00 => product(0),
        ScenarioKind::Prod01 => product(1),
        ScenarioKind::Prod10 => product(2),
        ScenarioKind::Prod11 => product(3),
        ScenarioKind::BellPhi => XState {
            a: bell_hi,
            b: bell_lo,
            c: bell_lo,
            d: bell_hi,
            w: coherence,
            ..Default::default()
        },
        ScenarioKind::BellPsi => XState {
            a: bell_lo,
            b: bell_hi,
            c: bell_hi,
            d: bell_lo,
            z: coherence,
            ..Default::default()
        },
        ScenarioKind::Raw => spec.raw_state.expect("validated above"),
    })
}
