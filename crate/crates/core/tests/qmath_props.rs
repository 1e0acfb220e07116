mod common;

use common::*;
use milburn_core::qmath::{
    bloch_decompose, hermitian_eigendecompose, inner, marginal_a, singular_values, trace_norm, Operator2,
    Operator4, C64,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eigendecomposition_reconstructs(m in arb_hermitian()) {
        let sys = hermitian_eigendecompose(&m).unwrap();
        prop_assert!(sys.reconstruct().max_abs_diff(&m) <= 1e-12);
        prop_assert!(sys.orthonormality_defect() <= 1e-12);
        prop_assert!(sys.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }
}

proptest! {
    #[test]
    fn trace_norm_is_unitarily_invariant(
        m in arb_matrix(),
        a in arb_su2(), b in arb_su2(), c in arb_su2(), d in arb_su2(),
        e in arb_su2(), f in arb_su2(), g in arb_su2(), h in arb_su2(),
        p1 in 0.0f64..6.3, p2 in 0.0f64..6.3,
    ) {
        let u = unitary4(&a, &b, &c, &d, p1);
        let v = unitary4(&e, &f, &g, &h, p2);
        let before = trace_norm(&m);
        let after = trace_norm(&(u * m * v));
        prop_assert!((before - after).abs() <= 1e-10, "{before} vs {after}");
    }

    #[test]
    fn singular_values_match_hermitian_spectrum(m in arb_hermitian()) {
        let mut abs_eig = hermitian_eigendecompose(&m).unwrap().eigenvalues.map(f64::abs);
        abs_eig.sort_by(|x, y| y.total_cmp(x));
        let sv = singular_values(&m);
        for (x, y) in abs_eig.iter().zip(&sv) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn bloch_round_trip(s in arb_xstate(), a in arb_su2(), b in arb_su2()) {
        let u = Operator4::kron(&a, &b);
        let rho = u * s.to_matrix() * u.adjoint();
        let rep = bloch_decompose(&rho);
        prop_assert!(rep.reconstruct().max_abs_diff(&rho) <= 1e-12);

        // |c| equals the singular values of T.
        let tt = rep.ttt();
        let t_op = Operator4::from_fn(|i, j| if i < 3 && j < 3 { C64::new(tt[i][j], 0.0) } else { C64::new(0.0, 0.0) });
        let mut sv2 = hermitian_eigendecompose(&t_op).unwrap().eigenvalues[..3].to_vec();
        sv2.iter_mut().for_each(|v| *v = v.max(0.0).sqrt());
        let mut c = rep.c.map(f64::abs).to_vec();
        c.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in c.iter().zip(&sv2) {
            prop_assert!((x - y).abs() <= 1e-7, "{c:?} vs {sv2:?}");
        }
    }

    #[test]
    fn marginal_survives_z_measurement(s in arb_xstate()) {
        let rho = s.to_matrix();
        let id = Operator2::identity();
        let mut measured = Operator4::zeros();
        for sign in [1.0, -1.0] {
            let p = Operator4::kron(&Operator2::bloch_projector([0.0, 0.0, 1.0], sign), &id);
            measured += p * rho * p;
        }
        prop_assert!(marginal_a(&measured).max_abs_diff(&marginal_a(&rho)) <= 1e-15);
        prop_assert!((marginal_a(&rho).trace().re - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn trace_norm_examples() {
    assert!((trace_norm(&Operator4::identity()) - 4.0).abs() < 1e-14);
    assert!((trace_norm(&Operator4::from_real_diagonal([0.5, -0.5, 0.0, 0.0])) - 1.0).abs() < 1e-14);
    let mut corner = Operator4::zeros();
    corner[(0, 3)] = C64::new(0.5, 0.0);
    corner[(3, 0)] = C64::new(0.5, 0.0);
    assert!((trace_norm(&corner) - 1.0).abs() < 1e-14);
}

#[test]
fn local_unitaries_are_unitary() {
    let u = unitary4(&su2(1.0, [1.0, 2.0, 3.0], 0.3), &su2(2.0, [0.0, 1.0, 0.0], 0.0), &su2(0.5, [1.0, 0.0, 0.0], 1.0), &su2(3.0, [0.3, 0.3, 1.0], 0.0), 0.7);
    assert!((u * u.adjoint()).max_abs_diff(&Operator4::identity()) < 1e-14);
    let v = [C64::new(0.5, 0.0); 4];
    assert!((inner(&u.apply(&v), &u.apply(&v)).re - 1.0).abs() < 1e-14);
}
