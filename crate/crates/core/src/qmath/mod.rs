//! Dense complex linear algebra for one- and two-qubit operators.
//!
//! Two-qubit operators use the computational basis in the order
//! `|00⟩, |01⟩, |10⟩, |11⟩`, with qubit `a` as the high bit: index
//! `2 * a + b`.

mod bloch;
mod density;
mod eigen;

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

pub use bloch::{bloch_decompose, svd3, BlochRep, Mat3};
pub use density::{
    marginal_a, marginal_b, validate_density, DensityReport, Violation, DEFAULT_VALIDATION_TOL,
};
pub use eigen::{hermitian_eigendecompose, singular_values, trace_norm, HermitianEigenSystem};

pub(crate) use eigen::{eigh_unchecked, hermitian_eigenvalues};

pub type Vector4 = [C64; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Labels of the computational basis in index order.
pub const BASIS_LABELS: [&str; 4] = ["00", "01", "10", "11"];

/// A 4×4 complex matrix acting on the two-qubit space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator4(pub [[C64; 4]; 4]);

/// A 2×2 complex matrix acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator2(pub [[C64; 2]; 2]);

impl Operator4 {
    pub const fn zeros() -> Self {
        Operator4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([1.0; 4])
    }

    pub fn from_real_diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (k, &v) in d.iter().enumerate() {
            m.0[k][k] = C64::new(v, 0.0);
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// Matrix whose k-th column is `cols[k]`.
    pub fn from_columns(cols: &[Vector4; 4]) -> Self {
        Self::from_fn(|i, j| cols[j][i])
    }

    pub fn column(&self, j: usize) -> Vector4 {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &Vector4, v: &Vector4) -> Self {
        Self::from_fn(|i, j| u[i] * v[j].conj())
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) ket.
    pub fn projector(psi: &Vector4) -> Self {
        Self::outer(psi, psi)
    }

    /// `a ⊗ b`.
    pub fn kron(a: &Operator2, b: &Operator2) -> Self {
        Self::from_fn(|i, j| a.0[i / 2][j / 2] * b.0[i % 2][j % 2])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    /// Element-wise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Operator4) -> C64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.0[i][j] * other.0[j][i];
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Operator4) -> Self {
        *self * *other - *other * *self
    }

    pub fn apply(&self, v: &Vector4) -> Vector4 {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// Largest `|m_ij − conj(m_ji)|` and where it occurs.
    pub fn hermitian_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..4 {
            for j in i..4 {
                let d = (self.0[i][j] - self.0[j][i].conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    /// `(m + m†) / 2`.
    pub fn hermitize(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] + self.0[j][i].conj()) * 0.5)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Operator4) -> f64 {
        (*self - *other).max_abs()
    }

    /// Squared Frobenius (Hilbert-Schmidt) norm.
    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for Operator4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Operator4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for Operator4 {
    type Output = Operator4;
    fn add(self, rhs: Operator4) -> Operator4 {
        Operator4::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl AddAssign for Operator4 {
    fn add_assign(&mut self, rhs: Operator4) {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl Sub for Operator4 {
    type Output = Operator4;
    fn sub(self, rhs: Operator4) -> Operator4 {
        Operator4::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for Operator4 {
    type Output = Operator4;
    fn neg(self) -> Operator4 {
        Operator4::from_fn(|i, j| -self.0[i][j])
    }
}

impl Mul for Operator4 {
    type Output = Operator4;
    fn mul(self, rhs: Operator4) -> Operator4 {
        let mut out = Operator4::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl Mul<C64> for Operator4 {
    type Output = Operator4;
    fn mul(self, s: C64) -> Operator4 {
        Operator4::from_fn(|i, j| self.0[i][j] * s)
    }
}

impl Mul<f64> for Operator4 {
    type Output = Operator4;
    fn mul(self, s: f64) -> Operator4 {
        Operator4::from_fn(|i, j| self.0[i][j] * s)
    }
}

impl Operator2 {
    pub const fn zeros() -> Self {
        Operator2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Operator2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn adjoint(&self) -> Self {
        Operator2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn max_abs_diff(&self, other: &Operator2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Projector `(𝟙 + s n·σ)/2` onto the Bloch direction `s n` (`s = ±1`).
    pub fn bloch_projector(n: [f64; 3], s: f64) -> Self {
        let (x, y, z) = (s * n[0], s * n[1], s * n[2]);
        Operator2([
            [C64::new(0.5 * (1.0 + z), 0.0), C64::new(0.5 * x, -0.5 * y)],
            [C64::new(0.5 * x, 0.5 * y), C64::new(0.5 * (1.0 - z), 0.0)],
        ])
    }
}

impl Mul for Operator2 {
    type Output = Operator2;
    fn mul(self, rhs: Operator2) -> Operator2 {
        let mut out = Operator2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Operator2 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

/// Pauli matrices `σ_x, σ_y, σ_z`.
pub fn pauli(k: usize) -> Operator2 {
    match k {
        0 => Operator2([[ZERO, ONE], [ONE, ZERO]]),
        1 => Operator2([[ZERO, -I], [I, ZERO]]),
        2 => Operator2([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index {k} out of range 0..3"),
    }
}

/// Spin-flip operator `σ_y ⊗ σ_y`.
pub fn sigma_yy() -> Operator4 {
    Operator4::kron(&pauli(1), &pauli(1))
}

pub fn ket(index: usize) -> Vector4 {
    let mut v = [ZERO; 4];
    v[index] = ONE;
    v
}

pub fn inner(u: &Vector4, v: &Vector4) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &Vector4) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_ordering_matches_basis_labels() {
        // σ_z ⊗ 𝟙 is +1 on |0x⟩ and −1 on |1x⟩.
        let m = Operator4::kron(&pauli(2), &Operator2::identity());
        let diag: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
        let m = Operator4::kron(&Operator2::identity(), &pauli(2));
        let diag: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn pauli_algebra() {
        let xy = pauli(0) * pauli(1);
        let iz = Operator2([[I, ZERO], [ZERO, -I]]);
        assert!(xy.max_abs_diff(&iz) < 1e-15);
    }

    #[test]
    fn bloch_projectors_are_complementary() {
        let n = [0.6, 0.0, 0.8];
        let p = Operator2::bloch_projector(n, 1.0);
        let q = Operator2::bloch_projector(n, -1.0);
        assert!((p * p).max_abs_diff(&p) < 1e-15);
        assert!((p * q).max_abs_diff(&Operator2::zeros()) < 1e-15);
    }

    #[test]
    fn trace_product_matches_product_trace() {
        let a = Operator4::from_fn(|i, j| C64::new(i as f64 + 0.5, j as f64 - 1.0));
        let b = Operator4::from_fn(|i, j| C64::new((i * j) as f64, 1.0));
        assert!((a.trace_product(&b) - (a * b).trace()).norm() < 1e-12);
    }
}
