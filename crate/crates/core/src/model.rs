//! Two-qubit Hamiltonian with anisotropic exchange, a z-axis DM term and an
//! inhomogeneous z field, and its closed-form spectrum.
//!
//! In the computational basis the Hamiltonian is block diagonal: an outer
//! block on `{|00⟩, |11⟩}` and an inner block on `{|01⟩, |10⟩}`:
//!
//! ```text
//!     ⎡ Jz/2+B     0          0        J₋    ⎤
//! H = ⎢   0      λ−Jz/2     J₊+iD       0    ⎥
//!     ⎢   0      J₊−iD     −λ−Jz/2      0    ⎥
//!     ⎣  J₋        0          0      Jz/2−B  ⎦
//! ```
//!
//! with `J± = (Jx ± Jy)/2`. Units have ħ = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{eigh_unchecked, ket, Operator4, Vector4, C64, ZERO};

/// Denominators or gaps below this switch to the numeric fallback.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ModelParams {
    /// `J₊ = (Jx + Jy)/2`.
    pub j_plus: f64,
    /// `J₋ = (Jx − Jy)/2`.
    pub j_minus: f64,
    pub j_z: f64,
    /// DM vector magnitude (along z).
    pub dm: f64,
    /// Uniform field `B`.
    pub field: f64,
    /// Field inhomogeneity `λ`.
    pub inhomogeneity: f64,
    /// Intrinsic decoherence rate `γ ≥ 0`.
    pub gamma: f64,
}

impl ModelParams {
    /// Build from the Cartesian exchange couplings.
    pub fn from_exchange(jx: f64, jy: f64, jz: f64) -> Self {
        ModelParams {
            j_plus: 0.5 * (jx + jy),
            j_minus: 0.5 * (jx - jy),
            j_z: jz,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("j_plus", self.j_plus),
            ("j_minus", self.j_minus),
            ("j_z", self.j_z),
            ("dm", self.dm),
            ("field", self.field),
            ("inhomogeneity", self.inhomogeneity),
            ("gamma", self.gamma),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParams(format!("gamma = {} must be >= 0", self.gamma)));
        }
        Ok(())
    }

    /// Inner-block frequency `η = √(λ² + D² + J₊²)`.
    pub fn eta(&self) -> f64 {
        (self.inhomogeneity.powi(2) + self.dm.powi(2) + self.j_plus.powi(2)).sqrt()
    }

    /// Outer-block frequency `μ = √(B² + J₋²)`.
    pub fn mu(&self) -> f64 {
        (self.field.powi(2) + self.j_minus.powi(2)).sqrt()
    }
}

pub fn build_hamiltonian(p: &ModelParams) -> Operator4 {
    let half_jz = 0.5 * p.j_z;
    let mut h = Operator4::from_real_diagonal([
        half_jz + p.field,
        p.inhomogeneity - half_jz,
        -p.inhomogeneity - half_jz,
        half_jz - p.field,
    ]);
    h[(0, 3)] = C64::new(p.j_minus, 0.0);
    h[(3, 0)] = C64::new(p.j_minus, 0.0);
    h[(1, 2)] = C64::new(p.j_plus, p.dm);
    h[(2, 1)] = C64::new(p.j_plus, -p.dm);
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DegeneracyFlags {
    pub eta_zero: bool,
    pub mu_zero: bool,
    /// `D² + J₊² = 0`, i.e. `η = |λ|`: the inner-block mixing vanishes.
    pub eta_equals_abs_lambda: bool,
    /// `J₋ = 0`: the outer-block mixing vanishes.
    pub j_minus_zero: bool,
}

impl DegeneracyFlags {
    pub fn inner_numeric(&self) -> bool {
        self.eta_zero || self.eta_equals_abs_lambda
    }

    pub fn outer_numeric(&self) -> bool {
        self.mu_zero || self.j_minus_zero
    }

    pub fn any(&self) -> bool {
        self.inner_numeric() || self.outer_numeric()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Normalizers {
    pub n_plus: f64,
    pub n_minus: f64,
    pub m_plus: f64,
    pub m_minus: f64,
}

/// Eigenvalues `E₁..E₄` and eigenvectors `|φ₁⟩..|φ₄⟩`:
///
/// * `E₁,₂ = −Jz/2 ± η`, `|φ₁,₂⟩ = N± ((λ ± η)/(J₊ − iD) |01⟩ + |10⟩)`
/// * `E₃,₄ = Jz/2 ± μ`,  `|φ₃,₄⟩ = M± ((B ± μ)/J₋ |00⟩ + |11⟩)`
///
/// with `N± = √((D² + J₊²) / (2η(η ± λ)))` and `M± = √(J₋² / (2μ(μ ± B)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub eta: f64,
    pub mu: f64,
    pub energies: [f64; 4],
    pub vectors: [Vector4; 4],
    /// Zero for a block whose vectors came from the numeric fallback.
    pub normalizers: Normalizers,
    pub degenerate: DegeneracyFlags,
}

impl SpectralData {
    /// Unitary with the eigenvectors as columns.
    pub fn unitary(&self) -> Operator4 {
        Operator4::from_columns(&self.vectors)
    }

    /// Largest `‖H|φₖ⟩ − Eₖ|φₖ⟩‖` over `k`.
    pub fn max_residual(&self, h: &Operator4) -> f64 {
        self.vectors
            .iter()
            .zip(&self.energies)
            .map(|(v, e)| {
                let hv = h.apply(v);
                hv.iter().zip(v).map(|(a, b)| (a - b * e).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// `(s + r, s − r)` for `s = √(r² + q²)` without cancellation.
fn sum_and_gap(s: f64, r: f64, q_sq: f64) -> (f64, f64) {
    if r >= 0.0 {
        let plus = s + r;
        (plus, if plus > 0.0 { q_sq / plus } else { 0.0 })
    } else {
        let minus = s - r;
        (if minus > 0.0 { q_sq / minus } else { 0.0 }, minus)
    }
}

pub fn analytic_spectrum(p: &ModelParams) -> SpectralData {
    let eta = p.eta();
    let mu = p.mu();
    let half_jz = 0.5 * p.j_z;
    let energies = [-half_jz + eta, -half_jz - eta, half_jz + mu, half_jz - mu];

    let mix_sq = p.dm * p.dm + p.j_plus * p.j_plus;
    let degenerate = DegeneracyFlags {
        eta_zero: eta < DEGENERACY_TOL,
        mu_zero: mu < DEGENERACY_TOL,
        eta_equals_abs_lambda: mix_sq.sqrt() < DEGENERACY_TOL,
        j_minus_zero: p.j_minus.abs() < DEGENERACY_TOL,
    };

    let mut vectors = [[ZERO; 4]; 4];
    let mut normalizers = Normalizers::default();

    if degenerate.inner_numeric() {
        let [hi, lo] = block_fallback(p, [1, 2]);
        vectors[0] = hi;
        vectors[1] = lo;
    } else {
        // η ± λ, computed so neither side loses precision when |λ| ≈ η.
        let (eta_plus_lambda, eta_minus_lambda) = sum_and_gap(eta, p.inhomogeneity, mix_sq);
        let denom = C64::new(p.j_plus, -p.dm);
        normalizers.n_plus = (mix_sq / (2.0 * eta * eta_plus_lambda)).sqrt();
        normalizers.n_minus = (mix_sq / (2.0 * eta * eta_minus_lambda)).sqrt();
        for (k, (lambda_pm_eta, norm)) in [
            (eta_plus_lambda, normalizers.n_plus),
            (-eta_minus_lambda, normalizers.n_minus),
        ]
        .into_iter()
        .enumerate()
        {
            let mut v = [ZERO; 4];
            v[1] = C64::new(lambda_pm_eta, 0.0) / denom * norm;
            v[2] = C64::new(norm, 0.0);
            vectors[k] = v;
        }
    }

    if degenerate.outer_numeric() {
        let [hi, lo] = block_fallback(p, [0, 3]);
        vectors[2] = hi;
        vectors[3] = lo;
    } else {
        let jm_sq = p.j_minus * p.j_minus;
        let (mu_plus_b, mu_minus_b) = sum_and_gap(mu, p.field, jm_sq);
        normalizers.m_plus = (jm_sq / (2.0 * mu * mu_plus_b)).sqrt();
        normalizers.m_minus = (jm_sq / (2.0 * mu * mu_minus_b)).sqrt();
        for (k, (b_pm_mu, norm)) in [(mu_plus_b, normalizers.m_plus), (-mu_minus_b, normalizers.m_minus)]
            .into_iter()
            .enumerate()
        {
            let mut v = [ZERO; 4];
            v[0] = C64::new(b_pm_mu / p.j_minus * norm, 0.0);
            v[3] = C64::new(norm, 0.0);
            vectors[2 + k] = v;
        }
    }

    SpectralData {
        eta,
        mu,
        energies,
        vectors,
        normalizers,
        degenerate,
    }
}

/// Eigenvectors of one 2×2 block of `H`, higher energy first. A block
/// proportional to the identity is diagonalized in the symmetric /
/// antisymmetric basis `(|i⟩ ± |j⟩)/√2`, the zero-mixing limit of the
/// closed-form vectors along the zero-field line (this is where the
/// isotropic model yields the Bell basis).
fn block_fallback(p: &ModelParams, idx: [usize; 2]) -> [Vector4; 2] {
    let h = build_hamiltonian(p);
    let mut block = Operator4::zeros();
    for &i in &idx {
        for &j in &idx {
            block[(i, j)] = h[(i, j)];
        }
    }
    let (i, j) = (idx[0], idx[1]);
    let gap = ((block[(i, i)].re - block[(j, j)].re).powi(2) + 4.0 * block[(i, j)].norm_sqr()).sqrt();
    if gap < DEGENERACY_TOL {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (ei, ej) = (ket(i), ket(j));
        let plus = [0, 1, 2, 3].map(|k| (ei[k] + ej[k]) * s);
        let minus = [0, 1, 2, 3].map(|k| (ei[k] - ej[k]) * s);
        return [plus, minus];
    }
    let sys = eigh_unchecked(&block);
    let mut picked: Vec<(f64, Vector4)> = sys
        .eigenvalues
        .iter()
        .zip(&sys.eigenvectors)
        .filter(|(_, v)| v[i].norm_sqr() + v[j].norm_sqr() > 0.5)
        .map(|(e, v)| (*e, *v))
        .collect();
    picked.sort_by(|a, b| b.0.total_cmp(&a.0));
    [picked[0].1, picked[1].1]
}
