use thiserror::Error;

use crate::qmath::DensityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: |m[{row}][{col}] - conj(m[{col}][{row}])| = {magnitude:.3e}")]
    NotHermitian {
        magnitude: f64,
        row: usize,
        col: usize,
    },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(DensityReport),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A closed-form engine hit a parameter point where its formulas divide
    /// by zero. The remedy names the engine that covers the point.
    #[error("{engine} engine cannot handle these parameters: {reason}; use the {remedy} engine instead")]
    Singular {
        engine: &'static str,
        reason: String,
        remedy: &'static str,
    },

    #[error("no steady state: {0}")]
    NoSteadyState(String),

    #[error("Kraus series did not reach tolerance {tol:.1e} within {terms} terms (remainder bound {bound:.3e})")]
    Truncation { tol: f64, terms: usize, bound: f64 },

    #[error("RK4 step dt = {dt} is unstable: drift {drift:.3e} at t = {t}; use a smaller step")]
    Stability { dt: f64, t: f64, drift: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Errors caused by the physics (parameter points or states outside an
    /// engine's domain) rather than by malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::NoSteadyState(_)
                | Error::Truncation { .. }
                | Error::Stability { .. }
                | Error::InvalidDensity(_)
                | Error::NotHermitian { .. }
        )
    }
}
