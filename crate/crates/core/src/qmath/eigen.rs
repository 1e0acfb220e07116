//! Cyclic Jacobi eigensolver for 4×4 Hermitian matrices, and the singular
//! values and trace norm built on it.

use super::{inner, Operator4, Vector4, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Inputs with a larger Hermitian defect are rejected.
const HERMITIAN_TOL: f64 = 1e-10;
/// Stop when the off-diagonal Frobenius mass falls below this (scaled by
/// `max(1, ‖m‖_F)`).
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;
/// Eigenvalues closer than this (relative to the spectral scale) are ties.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigenSystem {
    /// Sorted descending.
    pub eigenvalues: [f64; 4],
    /// Orthonormal eigenvectors aligned with `eigenvalues`. The first
    /// component with modulus above 1e-12 is real and positive.
    pub eigenvectors: [Vector4; 4],
}

impl HermitianEigenSystem {
    /// The unitary whose columns are the eigenvectors.
    pub fn unitary(&self) -> Operator4 {
        Operator4::from_columns(&self.eigenvectors)
    }

    /// `Σₖ Eₖ |vₖ⟩⟨vₖ|`.
    pub fn reconstruct(&self) -> Operator4 {
        let mut m = Operator4::zeros();
        for (e, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            m += Operator4::projector(v) * *e;
        }
        m
    }

    /// `max |⟨vᵢ|vⱼ⟩ − δᵢⱼ|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((inner(&self.eigenvectors[i], &self.eigenvectors[j]) - target).norm());
            }
        }
        worst
    }

    /// Apply `f` to the spectrum: `Σₖ f(Eₖ) |vₖ⟩⟨vₖ|`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Operator4 {
        let mut m = Operator4::zeros();
        for (e, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            m += Operator4::projector(v) * f(*e);
        }
        m
    }
}

/// Eigendecomposition of a Hermitian 4×4 matrix with deterministic ordering
/// (descending eigenvalues; ties ordered by the lexicographically larger
/// phase-fixed eigenvector) and phase convention.
pub fn hermitian_eigendecompose(m: &Operator4) -> Result<HermitianEigenSystem> {
    let (defect, row, col) = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            magnitude: defect,
            row,
            col,
        });
    }
    Ok(eigh_unchecked(m))
}

/// Jacobi diagonalization of the Hermitian part of `m`; no input check.
pub(crate) fn eigh_unchecked(m: &Operator4) -> HermitianEigenSystem {
    let (values, vectors) = jacobi(m);
    canonicalize(values, vectors)
}

/// Eigenvalues only, sorted descending.
pub(crate) fn hermitian_eigenvalues(m: &Operator4) -> [f64; 4] {
    let (mut values, _) = jacobi(m);
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

fn jacobi(m: &Operator4) -> ([f64; 4], [Vector4; 4]) {
    let mut a = m.hermitize().0;
    let mut w = Operator4::identity().0;
    let scale = m.frobenius_sq().sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum();
        if off.sqrt() < OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut w, p, q);
            }
        }
    }

    let values = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    let wm = Operator4(w);
    let vectors = [wm.column(0), wm.column(1), wm.column(2), wm.column(3)];
    (values, vectors)
}

/// One complex Jacobi rotation annihilating `a[p][q]`. The rotation is
/// `V = diag(1, e^{-iφ}) · R(θ)` on the `(p, q)` plane, where `φ = arg a_pq`
/// makes the pivot real and `R(θ)` is the classic real Jacobi rotation.
fn rotate(a: &mut [[C64; 4]; 4], w: &mut [[C64; 4]; 4], p: usize, q: usize) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let tau = (a[q][q].re - a[p][p].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e_minus = phase.conj();

    // A ← A V, W ← W V
    for row in [&mut *a, &mut *w] {
        for r in row.iter_mut() {
            let (xp, xq) = (r[p], r[q]);
            r[p] = xp * c - xq * e_minus * s;
            r[q] = xp * s + xq * e_minus * c;
        }
    }
    // A ← V† A
    for k in 0..4 {
        let (xp, xq) = (a[p][k], a[q][k]);
        a[p][k] = xp * c - xq * phase * s;
        a[q][k] = xp * s + xq * phase * c;
    }
    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p] = C64::new(a[p][p].re, 0.0);
    a[q][q] = C64::new(a[q][q].re, 0.0);
}

fn fix_phase(v: &mut Vector4) {
    if let Some(lead) = v.iter().copied().find(|z| z.norm() > 1e-12) {
        let rot = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

fn lexicographic_desc(u: &Vector4, v: &Vector4) -> std::cmp::Ordering {
    for (a, b) in u.iter().zip(v) {
        let ord = b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im));
        if ord.is_ne() {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

fn canonicalize(values: [f64; 4], mut vectors: [Vector4; 4]) -> HermitianEigenSystem {
    for v in vectors.iter_mut() {
        fix_phase(v);
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));

    // Within runs of tied eigenvalues, order by eigenvector.
    let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && (values[order[end - 1]] - values[order[end]]).abs() <= TIE_TOL * scale {
            end += 1;
        }
        order[start..end].sort_by(|&i, &j| lexicographic_desc(&vectors[i], &vectors[j]));
        start = end;
    }

    HermitianEigenSystem {
        eigenvalues: order.map(|k| values[k]),
        eigenvectors: order.map(|k| vectors[k]),
    }
}

/// Singular values of `m`, descending, as non-negative square roots of the
/// eigenvalues of `m†m`.
pub fn singular_values(m: &Operator4) -> [f64; 4] {
    let gram = m.adjoint() * *m;
    hermitian_eigenvalues(&gram).map(|e| e.max(0.0).sqrt())
}

/// Trace norm `Tr √(m†m)`: the sum of singular values. Hermitian input uses
/// `Σ|Eₖ|` directly, which keeps full precision for small singular values.
pub fn trace_norm(m: &Operator4) -> f64 {
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    if m.hermitian_defect().0 <= 1e-13 * scale {
        hermitian_eigenvalues(m).iter().map(|e| e.abs()).sum()
    } else {
        singular_values(m).iter().sum()
    }
}
