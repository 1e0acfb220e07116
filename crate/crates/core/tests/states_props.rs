use milburn_core::measures::purity;
use milburn_core::qmath::{validate_density, Operator4};
use milburn_core::states::{make_initial_state, ScenarioKind, ScenarioSpec};
use proptest::prelude::*;

#[test]
fn p_zero_is_maximally_mixed() {
    for kind in ScenarioKind::NAMED {
        let s = make_initial_state(&ScenarioSpec::new(kind, 0.0)).unwrap();
        assert_eq!(s.to_matrix(), Operator4::identity() * 0.25, "{kind}");
    }
}

#[test]
fn p_one_is_pure() {
    for kind in ScenarioKind::NAMED {
        let rho = make_initial_state(&ScenarioSpec::new(kind, 1.0)).unwrap().to_matrix();
        assert!((purity(&rho) - 1.0).abs() <= 1e-12, "{kind}");
    }
}

proptest! {
    #[test]
    fn mixtures_are_valid_unit_trace(p in 0.0f64..=1.0, k in 0usize..6) {
        let s = make_initial_state(&ScenarioSpec::new(ScenarioKind::NAMED[k], p)).unwrap();
        prop_assert!((s.trace() - 1.0).abs() <= 1e-15);
        prop_assert!(validate_density(&s.to_matrix(), 1e-12).is_valid());
    }

    #[test]
    fn out_of_range_p_is_rejected(p in prop_oneof![-5.0f64..-1e-9, 1.0000001f64..5.0]) {
        prop_assert!(make_initial_state(&ScenarioSpec::new(ScenarioKind::BellPsi, p)).is_err());
    }
}
