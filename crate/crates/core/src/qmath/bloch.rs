//! Pauli (Bloch) decomposition of two-qubit states.

use super::{pauli, Operator2, Operator4};

pub type Mat3 = [[f64; 3]; 3];

/// `ρ = ¼(𝟙⊗𝟙 + Σ xᵢ σᵢ⊗𝟙 + Σ yᵢ 𝟙⊗σᵢ + Σ tᵢⱼ σᵢ⊗σⱼ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochRep {
    /// Local Bloch vector of qubit `a`.
    pub x: [f64; 3],
    /// Local Bloch vector of qubit `b`.
    pub y: [f64; 3],
    /// Correlation matrix `tᵢⱼ = Tr(ρ σᵢ⊗σⱼ)`.
    pub t: Mat3,
    /// Signed canonical correlations: `rot_a · t · rot_bᵀ = diag(c)` with
    /// `|c|` sorted descending and `sign(c₁c₂c₃) = sign(det t)`.
    pub c: [f64; 3],
    /// Proper rotation applied on qubit `a`.
    pub rot_a: Mat3,
    /// Proper rotation applied on qubit `b`.
    pub rot_b: Mat3,
}

impl BlochRep {
    /// `x` expressed in the frame where the correlation matrix is diagonal.
    pub fn x_local(&self) -> [f64; 3] {
        mat_vec(&self.rot_a, &self.x)
    }

    pub fn reconstruct(&self) -> Operator4 {
        let id = Operator2::identity();
        let mut m = Operator4::identity();
        for i in 0..3 {
            m += Operator4::kron(&pauli(i), &id) * self.x[i];
            m += Operator4::kron(&id, &pauli(i)) * self.y[i];
            for j in 0..3 {
                m += Operator4::kron(&pauli(i), &pauli(j)) * self.t[i][j];
            }
        }
        m * 0.25
    }

    /// `T Tᵀ`.
    pub fn ttt(&self) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, o) in row.iter_mut().enumerate() {
                *o = (0..3).map(|k| self.t[i][k] * self.t[j][k]).sum();
            }
        }
        out
    }
}

pub fn bloch_decompose(rho: &Operator4) -> BlochRep {
    let id = Operator2::identity();
    let mut x = [0.0; 3];
    let mut y = [0.0; 3];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        x[i] = rho.trace_product(&Operator4::kron(&pauli(i), &id)).re;
        y[i] = rho.trace_product(&Operator4::kron(&id, &pauli(i))).re;
        for j in 0..3 {
            t[i][j] = rho.trace_product(&Operator4::kron(&pauli(i), &pauli(j))).re;
        }
    }
    let (u, mut s, v) = svd3(&t);
    let (mut u, mut v) = (u, v);
    if det3(&u) < 0.0 {
        negate_column(&mut u, 2);
        s[2] = -s[2];
    }
    if det3(&v) < 0.0 {
        negate_column(&mut v, 2);
        s[2] = -s[2];
    }
    BlochRep {
        x,
        y,
        t,
        c: s,
        rot_a: transpose(&u),
        rot_b: transpose(&v),
    }
}

/// Real 3×3 SVD `t = u · diag(s) · vᵀ` by one-sided (Hestenes) Jacobi.
/// `u` and `v` are orthogonal (determinant ±1), `s` non-negative descending.
pub fn svd3(t: &Mat3) -> (Mat3, [f64; 3], Mat3) {
    let mut a = *t;
    let mut v = identity3();

    for _ in 0..64 {
        let mut rotated = false;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let alpha: f64 = (0..3).map(|k| a[k][p] * a[k][p]).sum();
            let beta: f64 = (0..3).map(|k| a[k][q] * a[k][q]).sum();
            let gamma: f64 = (0..3).map(|k| a[k][p] * a[k][q]).sum();
            if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                continue;
            }
            rotated = true;
            let zeta = (beta - alpha) / (2.0 * gamma);
            let tt = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
            let c = 1.0 / (1.0 + tt * tt).sqrt();
            let s = c * tt;
            for m in [&mut a, &mut v] {
                for row in m.iter_mut() {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = c * xp - s * xq;
                    row[q] = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: [f64; 3] = [0, 1, 2].map(|j| (0..3).map(|k| a[k][j] * a[k][j]).sum::<f64>().sqrt());
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let s = order.map(|j| norms[j]);
    let mut u = [[0.0; 3]; 3];
    let mut vs = [[0.0; 3]; 3];
    let cutoff = 1e-13 * s[0].max(f64::MIN_POSITIVE);
    let mut filled = [false; 3];
    for (col, &j) in order.iter().enumerate() {
        for k in 0..3 {
            vs[k][col] = v[k][j];
        }
        if s[col] > cutoff {
            for k in 0..3 {
                u[k][col] = a[k][j] / s[col];
            }
            filled[col] = true;
        }
    }
    complete_orthonormal(&mut u, &filled);
    (u, s, vs)
}

/// Fill the unfilled columns of `u` with unit vectors orthogonal to the
/// filled ones (Gram-Schmidt over the standard basis).
fn complete_orthonormal(u: &mut Mat3, filled: &[bool; 3]) {
    let mut have: Vec<usize> = (0..3).filter(|&c| filled[c]).collect();
    for col in 0..3 {
        if filled[col] {
            continue;
        }
        let mut best = ([0.0; 3], 0.0);
        for e in 0..3 {
            let mut cand = [0.0; 3];
            cand[e] = 1.0;
            for &h in &have {
                let dot: f64 = (0..3).map(|k| u[k][h] * cand[k]).sum();
                for k in 0..3 {
                    cand[k] -= dot * u[k][h];
                }
            }
            let n = cand.iter().map(|c| c * c).sum::<f64>().sqrt();
            if n > best.1 + 1e-12 {
                best = (cand, n);
            }
        }
        for k in 0..3 {
            u[k][col] = best.0[k] / best.1;
        }
        have.push(col);
    }
}

pub(crate) fn mat_vec(m: &Mat3, x: &[f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| m[i][k] * x[k]).sum())
}

fn identity3() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

fn transpose(m: &Mat3) -> Mat3 {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[j][i]))
}

fn negate_column(m: &mut Mat3, col: usize) {
    for row in m.iter_mut() {
        row[col] = -row[col];
    }
}

pub(crate) fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
