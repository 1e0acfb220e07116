use std::fmt;

use super::{eigen::hermitian_eigenvalues, Operator2, Operator4, ZERO};

pub const DEFAULT_VALIDATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// `|Tr ρ − 1|`.
    Trace { deviation: f64 },
    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    NotHermitian { magnitude: f64 },
    /// Most negative eigenvalue of the Hermitian part.
    Negative { eigenvalue: f64 },
    NonFinite,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Trace { deviation } => write!(f, "trace deviates from 1 by {deviation:.3e}"),
            Violation::NotHermitian { magnitude } => {
                write!(f, "Hermitian defect {magnitude:.3e}")
            }
            Violation::Negative { eigenvalue } => {
                write!(f, "negative eigenvalue {eigenvalue:.3e}")
            }
            Violation::NonFinite => write!(f, "non-finite entries"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub tol: f64,
    pub trace_deviation: f64,
    pub hermitian_defect: f64,
    pub min_eigenvalue: f64,
    pub violations: Vec<Violation>,
}

impl DensityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid (tol {:.1e})", self.tol);
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " (tol {:.1e})", self.tol)
    }
}

/// Check `Tr ρ = 1`, `ρ = ρ†` and `ρ ≥ 0`, each within `tol`.
pub fn validate_density(rho: &Operator4, tol: f64) -> DensityReport {
    if !rho.is_finite() {
        return DensityReport {
            tol,
            trace_deviation: f64::NAN,
            hermitian_defect: f64::NAN,
            min_eigenvalue: f64::NAN,
            violations: vec![Violation::NonFinite],
        };
    }
    let tr = rho.trace();
    let trace_deviation = (tr - 1.0).norm();
    let hermitian_defect = rho.hermitian_defect().0;
    let min_eigenvalue = hermitian_eigenvalues(rho)[3];

    let mut violations = Vec::new();
    if trace_deviation > tol {
        violations.push(Violation::Trace { deviation: trace_deviation });
    }
    if hermitian_defect > tol {
        violations.push(Violation::NotHermitian { magnitude: hermitian_defect });
    }
    if min_eigenvalue < -tol {
        violations.push(Violation::Negative { eigenvalue: min_eigenvalue });
    }
    DensityReport {
        tol,
        trace_deviation,
        hermitian_defect,
        min_eigenvalue,
        violations,
    }
}

/// `Tr_b ρ`.
pub fn marginal_a(rho: &Operator4) -> Operator2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            *o = rho[(2 * i, 2 * j)] + rho[(2 * i + 1, 2 * j + 1)];
        }
    }
    Operator2(out)
}

/// `Tr_a ρ`.
pub fn marginal_b(rho: &Operator4) -> Operator2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            *o = rho[(i, j)] + rho[(2 + i, 2 + j)];
        }
    }
    Operator2(out)
}
