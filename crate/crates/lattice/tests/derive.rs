use num_rational::BigRational;
use num_traits::{One, Signed};

use fullfield_lattice::derive::{derive_f_entry, derive_s12, emit_chiral_data, skew_constraint};
use fullfield_lattice::{LatticeError, LatticeSpec};

use fullfield_core::chiraldata::admissible_keys;

#[test]
fn vacuum_entries_are_one() {
    for k in 1..=3u32 {
        let spec = LatticeSpec::new(k, 8).unwrap();
        let m = spec.modulus() as usize;
        for a in 0..m {
            let f = derive_f_entry(&spec, [0, a, 0, a, a, a], 8).unwrap();
            assert!(f.is_one(), "k={k} a={a}");
            let f = derive_f_entry(&spec, [0, 0, a, a, a, 0], 8).unwrap();
            assert!(f.is_one(), "k={k} a={a}");
            let f = derive_f_entry(&spec, [a, 0, 0, a, 0, a], 8).unwrap();
            assert!(f.is_one(), "k={k} a={a}");
        }
    }
}

#[test]
fn entries_are_signs() {
    for k in 1..=3u32 {
        let spec = LatticeSpec::new(k, 8).unwrap();
        for key in admissible_keys(&spec.fusion().unwrap()) {
            let f = derive_f_entry(&spec, key, 4 * k).unwrap();
            let r = f.as_rational().expect("rational entry");
            assert!(r.abs().is_one(), "k={k} {key:?} = {r}");
        }
    }
}

#[test]
fn inadmissible_labels_are_rejected() {
    let spec = LatticeSpec::new(1, 8).unwrap();
    assert!(matches!(
        derive_f_entry(&spec, [1, 1, 1, 0, 0, 0], 8),
        Err(LatticeError::NotAdmissible(_))
    ));
    assert!(matches!(
        derive_f_entry(&spec, [2, 0, 0, 2, 0, 2], 8),
        Err(LatticeError::NotAdmissible(_))
    ));
}

#[test]
fn small_truncation_is_reported() {
    let spec = LatticeSpec::new(2, 8).unwrap();
    assert_eq!(
        derive_f_entry(&spec, [1, 1, 1, 3, 2, 2], 0),
        Err(LatticeError::TruncationTooSmall(0))
    );
}

#[test]
fn skew_products_are_signs() {
    for k in 1..=3u32 {
        let spec = LatticeSpec::new(k, 8).unwrap();
        let skew = skew_constraint(&spec).unwrap();
        for (x, v) in &skew.products {
            let r = v.as_rational().unwrap();
            assert!(r.abs().is_one(), "{x:?}");
        }
        let fusion = spec.fusion().unwrap();
        for (x, _) in fusion.nonzero_spaces() {
            let s = derive_s12(&spec, x);
            assert!(s.abs().is_one());
            if x.0 == 0 || x.1 == 0 {
                assert_eq!(s, BigRational::one(), "{x:?}");
            }
        }
    }
}

#[test]
fn emitted_bundle_passes_core_checks() {
    for k in 1..=3u32 {
        let spec = LatticeSpec::new(k, 8).unwrap();
        let cd = emit_chiral_data(&spec).unwrap();
        assert!(cd.verify_pentagon().passed(), "pentagon k={k}");
        assert!(cd.verify_s3_invariance().passed(), "s3 k={k}");
        assert!(cd.verify_prop_fusing().passed(), "fusing k={k}");
        assert!(cd.verify_nondegeneracy().passed(), "pairing k={k}");
        for a in cd.fusion().labels() {
            let ad = cd.fusion().dual(a);
            assert_eq!(cd.f_a(a).unwrap(), cd.f_a(ad).unwrap(), "k={k} a={a}");
        }
    }
}
