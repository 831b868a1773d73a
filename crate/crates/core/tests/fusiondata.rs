mod common;

use std::collections::BTreeMap;

use common::cyclic_fusion;
use fullfield_core::fusiondata::{FusionData, FusionError};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn cyclic_rules_are_valid() {
    for k in 1..=4 {
        let fu = cyclic_fusion(k);
        assert!(fu.validate().is_valid(), "k={k}");
        assert_eq!(fu.check_field_order((8 * k) as u32), Ok(()));
    }
}

#[test]
fn field_order_must_hold_every_phase() {
    let fu = FusionData::cyclic(2, vec![q(0, 1), q(1, 16)]).unwrap();
    assert!(matches!(
        fu.check_field_order(4),
        Err(FusionError::FieldOrder { .. })
    ));
    assert_eq!(fu.check_field_order(32), Ok(()));
    assert_eq!(fu.phase_order(), 32.into());
}

#[test]
fn broken_commutativity_is_reported() {
    let mut rules = BTreeMap::new();
    for s in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)] {
        rules.insert(s, 1);
    }
    rules.remove(&(1, 0, 1));
    let fu = FusionData::new(
        vec!["1".into(), "t".into()],
        0,
        vec![0, 1],
        vec![q(0, 1), q(2, 5)],
        rules,
    )
    .unwrap();
    let v = fu.validate();
    assert!(v.violations.iter().any(|x| x.invariant == "commutativity"));
    assert!(v.violations.iter().any(|x| x.invariant == "unit-right"));
}

#[test]
fn duplicate_labels_are_rejected() {
    let r = FusionData::new(
        vec!["a".into(), "a".into()],
        0,
        vec![0, 1],
        vec![q(0, 1), q(0, 1)],
        BTreeMap::new(),
    );
    assert!(matches!(r, Err(FusionError::DuplicateLabel(_))));
}

proptest! {
    #[test]
    fn space_maps_are_involutions(k in 1i64..5, a in 0usize..8, b in 0usize..8) {
        let fu = cyclic_fusion(k);
        let n = fu.rank();
        let x = (a % n, b % n, (a + b) % n);
        prop_assert_eq!(fu.s12_space(fu.s12_space(x)), x);
        prop_assert_eq!(fu.s23_space(fu.s23_space(x)), x);
        prop_assert_eq!(fu.dual_space(fu.dual_space(x)), x);
        prop_assert_eq!(fu.mult(fu.dual_space(x)), fu.mult(x));
        prop_assert_eq!(fu.mult(fu.s12_space(x)), fu.mult(x));
        prop_assert_eq!(fu.mult(fu.s23_space(x)), fu.mult(x));
    }
}
