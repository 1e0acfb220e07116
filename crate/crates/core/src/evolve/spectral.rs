use crate::error::Result;
use crate::model::{analytic_spectrum, ModelParams};
use crate::qmath::{Operator4, C64};

use super::{check_density, check_time};

/// `ρ₀` in the energy eigenbasis, ready to be propagated to any time:
///
/// ```text
/// ρ(t) = Σₘₙ exp[−(γt/2)(Eₘ − Eₙ)² − i(Eₘ − Eₙ)t] ⟨φₘ|ρ₀|φₙ⟩ |φₘ⟩⟨φₙ|
/// ```
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    u: Operator4,
    u_dag: Operator4,
    rho_eig: Operator4,
    energies: [f64; 4],
    gamma: f64,
}

impl SpectralPropagator {
    /// No validation; see [`evolve_spectral`] for the checked entry point.
    pub fn new(rho0: &Operator4, params: &ModelParams) -> Self {
        let spec = analytic_spectrum(params);
        let u = spec.unitary();
        let u_dag = u.adjoint();
        SpectralPropagator {
            u,
            u_dag,
            rho_eig: u_dag * *rho0 * u,
            energies: spec.energies,
            gamma: params.gamma,
        }
    }

    pub fn at(&self, t: f64) -> Operator4 {
        let e = &self.energies;
        let mut r = self.rho_eig;
        for m in 0..4 {
            for n in 0..4 {
                if m == n {
                    continue;
                }
                let de = e[m] - e[n];
                let decay = (-0.5 * self.gamma * t * de * de).exp();
                r[(m, n)] *= C64::from_polar(decay, -de * t);
            }
        }
        (self.u * r * self.u_dag).hermitize()
    }
}

pub fn evolve_spectral(rho0: &Operator4, params: &ModelParams, t: f64) -> Result<Operator4> {
    params.validate()?;
    check_density(rho0)?;
    check_time(t)?;
    Ok(SpectralPropagator::new(rho0, params).at(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hamiltonian;
    use crate::qmath::hermitian_eigendecompose;
    use crate::states::{make_initial_state, ScenarioKind, ScenarioSpec};

    fn fig2(gamma: f64) -> ModelParams {
        ModelParams {
            j_plus: 1.0,
            j_minus: 0.5,
            j_z: 1.0,
            dm: 1.0,
            field: 1.0,
            inhomogeneity: 0.5,
            gamma,
        }
    }

    fn bell_phi() -> Operator4 {
        make_initial_state(&ScenarioSpec::new(ScenarioKind::BellPhi, 1.0)).unwrap().to_matrix()
    }

    #[test]
    fn t_zero_returns_input() {
        let rho = bell_phi();
        let out = evolve_spectral(&rho, &fig2(0.05), 0.0).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn unitary_limit() {
        let p = fig2(0.0);
        let rho = bell_phi();
        let t = 0.83;
        let sys = hermitian_eigendecompose(&build_hamiltonian(&p)).unwrap();
        let prop = Operator4::from_fn(|i, j| {
            (0..4)
                .map(|k| sys.eigenvectors[k][i] * C64::from_polar(1.0, -sys.eigenvalues[k] * t) * sys.eigenvectors[k][j].conj())
                .sum()
        });
        let want = prop * rho * prop.adjoint();
        let got = evolve_spectral(&rho, &p, t).unwrap();
        assert!(got.max_abs_diff(&want) < 1e-13);
        assert!(((got * got).trace().re - 1.0).abs() < 1e-13);
    }

    #[test]
    fn bell_phi_corner_at_half_period() {
        let mu = 1.25f64.sqrt();
        let t = std::f64::consts::PI / (2.0 * mu);
        let out = evolve_spectral(&bell_phi(), &fig2(0.05), t).unwrap();
        let want = 0.1 - 0.4 * (-2.5 * 0.05 * t).exp();
        assert!((out[(0, 3)].re - want).abs() < 1e-12, "{} vs {want}", out[(0, 3)]);
        assert!((want + 0.23558).abs() < 1e-5);
        assert!(out[(0, 3)].im.abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_input() {
        let bad = Operator4::identity() * 0.3;
        assert!(evolve_spectral(&bad, &fig2(0.05), 1.0).is_err());
        assert!(evolve_spectral(&bell_phi(), &fig2(0.05), -1.0).is_err());
    }
}
