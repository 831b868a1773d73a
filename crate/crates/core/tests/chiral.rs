mod common;

use common::{cyclic_chiral, ising_chiral};
use fullfield_core::ffalgebra::construct;

#[test]
fn cyclic_data_pass_every_chiral_suite() {
    for k in [1, 2] {
        let ch = cyclic_chiral(k);
        for rep in [
            ch.verify_pentagon(),
            ch.verify_nondegeneracy(),
            ch.verify_prop_fusing(),
            ch.verify_s3_invariance(),
        ] {
            assert!(rep.passed(), "k={k}: {rep}");
        }
    }
}

#[test]
fn cyclic_full_field_algebra_passes() {
    for k in [1, 2] {
        let ffa = construct(&cyclic_chiral(k)).unwrap();
        for rep in [
            ffa.verify_associativity_structure(),
            ffa.verify_skew_symmetry_structure(),
            ffa.verify_single_valuedness(),
            ffa.verify_invariance_structure(),
        ] {
            assert!(rep.passed(), "k={k}: {rep}");
        }
    }
}

#[test]
fn ising_passes_every_suite() {
    let ch = ising_chiral();
    for rep in [
        ch.verify_pentagon(),
        ch.verify_nondegeneracy(),
        ch.verify_prop_fusing(),
        ch.verify_s3_invariance(),
    ] {
        assert!(rep.passed(), "{rep}");
    }
    let ffa = construct(&ch).unwrap();
    for rep in [
        ffa.verify_associativity_structure(),
        ffa.verify_skew_symmetry_structure(),
        ffa.verify_single_valuedness(),
        ffa.verify_invariance_structure(),
    ] {
        assert!(rep.passed(), "{rep}");
    }
}
