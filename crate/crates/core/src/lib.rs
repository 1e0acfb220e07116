//! Dynamics of two interacting spin-1/2 qubits (anisotropic Heisenberg
//! exchange, z-axis Dzyaloshinskii–Moriya term, inhomogeneous field) under
//! Milburn intrinsic decoherence, together with the correlation measures
//! tracked along the evolution: concurrence and the Hilbert-Schmidt and
//! trace-norm measurement-induced nonlocality.
//!
//! Module map:
//!
//! * [`qmath`]: fixed-size complex operators, Jacobi eigensolver, trace norm,
//!   partial trace, Bloch decomposition, density-matrix validation.
//! * [`model`]: Hamiltonian and its closed-form spectrum.
//! * [`states`]: X-states and the named initial scenarios.
//! * [`evolve`]: four interchangeable evolution engines and the steady state.
//! * [`measures`]: closed-form measures and brute-force measurement oracles.
//! * [`par`]: data-parallel helpers with a sequential fallback.

pub mod error;
pub mod evolve;
pub mod measures;
pub mod model;
pub mod par;
pub mod qmath;
pub mod states;

pub use error::{Error, Result};
pub use evolve::{EngineTag, Trajectory};
pub use measures::CorrelationSample;
pub use model::{ModelParams, SpectralData};
pub use qmath::{Operator2, Operator4, C64};
pub use states::{ScenarioKind, ScenarioSpec, XState};
