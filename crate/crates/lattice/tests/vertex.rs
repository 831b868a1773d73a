use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use fullfield_lattice::fock::{basis_states, form_basis};
use fullfield_lattice::vertex::{apply_formal, exponent};
use fullfield_lattice::{ExactVector, LatticeError, LatticeSpec, Partition, State};

#[test]
fn zero_k_is_rejected() {
    assert_eq!(LatticeSpec::new(0, 8), Err(LatticeError::InvalidK));
}

#[test]
fn half_charge_leading_term() {
    // k = 1: e^{α/2} acting on e^{−α/2} starts at z^{−1/2} times ±𝟏
    let spec = LatticeSpec::new(1, 4).unwrap();
    let u = State::exp(1);
    let v = State::exp(-1);
    let y = apply_formal(
        &spec,
        &ExactVector::basis(&spec, u.clone()),
        &ExactVector::basis(&spec, v.clone()),
        4,
    );
    let c = y.coefficient(&State::vacuum());
    assert!(c.abs().is_one(), "coefficient {c}");
    assert_eq!(
        exponent(&spec, &u, &v, &State::vacuum()),
        BigRational::new((-1).into(), 2.into())
    );
    for s in y.terms.keys() {
        assert!(exponent(&spec, &u, &v, s) >= BigRational::new((-1).into(), 2.into()));
    }
}

#[test]
fn lowest_weights_are_minimal_in_each_sector() {
    for k in 1..=4u32 {
        let spec = LatticeSpec::new(k, 6).unwrap();
        for j in 0..spec.modulus() as u32 {
            let h = spec.h(j);
            for c in spec.charges(j, 6) {
                assert!(spec.charge_weight(c) >= h);
            }
            assert_eq!(spec.h(j), spec.h(spec.dual_sector(j)));
        }
    }
}

#[test]
fn vacuum_is_annihilated_by_l0_and_l_minus_one() {
    let spec = LatticeSpec::new(2, 6).unwrap();
    let vac = ExactVector::vacuum();
    assert!(vac.virasoro(&spec, 0).is_zero());
    assert!(vac.virasoro(&spec, -1).is_zero());
}

#[test]
fn central_charge_is_one() {
    // L(2)L(−2)𝟏 = c/2·𝟏, which pins c = 1 and rules out c = 2
    let spec = LatticeSpec::new(1, 6).unwrap();
    let v = ExactVector::vacuum().virasoro(&spec, -2).virasoro(&spec, 2);
    assert_eq!(
        v,
        ExactVector::vacuum().scale(&BigRational::new(1.into(), 2.into()))
    );
    assert_ne!(v, ExactVector::vacuum());
}

#[test]
fn form_is_diagonal_and_nondegenerate() {
    let spec = LatticeSpec::new(1, 6).unwrap();
    let states = basis_states(&spec, 0, 4);
    for a in &states {
        let dual = State::new(-a.charge, a.parts.clone());
        assert!(!form_basis(&spec, &dual, a).is_zero(), "{a}");
        for b in &states {
            if b.parts != a.parts || b.charge != a.charge {
                assert!(form_basis(&spec, &State::new(-b.charge, b.parts.clone()), a).is_zero());
            }
        }
    }
}

fn state_strategy(k: u32) -> impl Strategy<Value = State> {
    let m = 2 * k as i64;
    (-m..=m, proptest::collection::vec(1u32..=2, 0..=2))
        .prop_map(|(c, p)| State::new(c, Partition::from_parts(&p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identity_operator_acts_trivially(k in 1u32..=3, s in state_strategy(3)) {
        let spec = LatticeSpec::new(k, 8).unwrap();
        let v = ExactVector::basis(&spec, s);
        let t = v.max_rel_weight(&spec) + 1;
        prop_assert_eq!(apply_formal(&spec, &ExactVector::vacuum(), &v, t), v);
    }

    #[test]
    fn truncation_is_consistent(k in 1u32..=2, u in state_strategy(2), v in state_strategy(2), t in 2i64..5) {
        let spec = LatticeSpec::new(k, 8).unwrap();
        let (u, v) = (ExactVector::basis(&spec, u), ExactVector::basis(&spec, v));
        let lo = apply_formal(&spec, &u, &v, t);
        let hi = apply_formal(&spec, &u, &v, t + 1);
        prop_assert_eq!(hi.truncate(&spec, t), lo);
    }

    #[test]
    fn derivative_property(k in 1u32..=2, u in state_strategy(2), v in state_strategy(2)) {
        // Y(L(−1)u, z) = ∂_z Y(u, z), compared per output component
        let spec = LatticeSpec::new(k, 8).unwrap();
        let uv = ExactVector::basis(&spec, u.clone());
        let vv = ExactVector::basis(&spec, v.clone());
        let y = apply_formal(&spec, &uv, &vv, 5);
        let dy = apply_formal(&spec, &uv.virasoro(&spec, -1), &vv, 5);
        for s in y.terms.keys().chain(dy.terms.keys()) {
            prop_assert_eq!(dy.coefficient(s), exponent(&spec, &u, &v, s) * y.coefficient(s));
        }
    }

    #[test]
    fn cocycle_is_bimultiplicative_sign(k in 1u32..=4, a in -12i64..12, b in -12i64..12, c in -12i64..12) {
        let spec = LatticeSpec::new(k, 8).unwrap();
        prop_assert!(spec.cocycle(a, b).abs() == 1);
        prop_assert_eq!(spec.cocycle(a, b + c), spec.cocycle(a, b) * spec.cocycle(a, c));
        prop_assert_eq!(spec.cocycle(0, b), 1);
    }

    #[test]
    fn exponents_add_up(k in 1u32..=3, u in state_strategy(3), v in state_strategy(3)) {
        let spec = LatticeSpec::new(k, 8).unwrap();
        let y = apply_formal(&spec, &ExactVector::basis(&spec, u.clone()), &ExactVector::basis(&spec, v.clone()), 4);
        for s in y.terms.keys() {
            let r = exponent(&spec, &u, &v, s);
            prop_assert_eq!(r, s.weight(&spec) - u.weight(&spec) - v.weight(&spec));
        }
    }
}
