use num_complex::Complex64;

use fullfield_lattice::checks::{
    assoc_samples, check_associativity, check_jacobi_residues, jacobi_samples, run_check,
    skew_samples, AssocSample, CheckKind, Contour, RunOptions,
};
use fullfield_lattice::{
    ExactVector, FullAlgebra, FullVector, LatticeError, LatticeSpec, Partition, State,
};

fn algebra(k: u32) -> FullAlgebra {
    FullAlgebra::new(LatticeSpec::new(k, 8).unwrap()).unwrap()
}

fn pure(spec: &LatticeSpec, l: (i64, &[u32]), r: (i64, &[u32])) -> FullVector {
    FullVector::from_exact(
        &ExactVector::basis(spec, State::new(l.0, Partition::from_parts(l.1))),
        &ExactVector::basis(spec, State::new(r.0, Partition::from_parts(r.1))),
    )
}

#[test]
fn zero_argument_is_rejected() {
    let alg = algebra(1);
    let v = FullVector::vacuum();
    assert_eq!(
        alg.apply(&v, &v, Complex64::new(0.0, 0.0), 4).unwrap_err(),
        LatticeError::ZeroArgument
    );
}

#[test]
fn identity_full_operator() {
    let alg = algebra(1);
    let spec = *alg.spec();
    let v = pure(&spec, (1, &[1]), (-1, &[2]));
    let out = alg
        .apply(&FullVector::vacuum(), &v, Complex64::new(0.3, 0.4), 6)
        .unwrap();
    let l = State::new(1, Partition::from_parts(&[1]));
    let r = State::new(-1, Partition::from_parts(&[2]));
    assert!((out.value.component(&l, &r) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    assert_eq!(out.error_estimate, 0.0);
}

#[test]
fn creation_full_operator() {
    let alg = algebra(1);
    let spec = *alg.spec();
    let u = pure(&spec, (1, &[]), (-1, &[]));
    let z = Complex64::new(1e-4, 0.0);
    let out = alg.apply(&u, &FullVector::vacuum(), z, 6).unwrap();
    let c = out.value.component(&State::exp(1), &State::exp(-1));
    assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12, "{c}");
}

#[test]
fn series_is_single_valued() {
    for k in 1..=2u32 {
        let alg = algebra(k);
        let spec = *alg.spec();
        for a in 0..spec.modulus() {
            let u = pure(
                &spec,
                (spec.lowest_charge(a as u32), &[1]),
                (spec.lowest_charge(spec.dual_sector(a as u32)), &[]),
            );
            let v = pure(&spec, (1, &[]), (-1, &[1]));
            let s = alg.series(&u, &v, 5);
            assert!(!s.is_empty());
            assert!(s.is_single_valued(), "k={k} a={a}");
        }
    }
}

#[test]
fn series_matches_direct_evaluation() {
    let alg = algebra(1);
    let spec = *alg.spec();
    let u = pure(&spec, (1, &[1]), (-1, &[]));
    let v = pure(&spec, (-1, &[]), (1, &[1]));
    let z = Complex64::new(-0.4, 0.3);
    let direct = alg.apply(&u, &v, z, 5).unwrap().value;
    let viaseries = FullAlgebra::eval_series(&alg.series(&u, &v, 5), z);
    for l in fullfield_lattice::fock::basis_states(&spec, 0, 5) {
        for r in fullfield_lattice::fock::basis_states(&spec, 0, 5) {
            assert!((direct.component(&l, &r) - viaseries.component(&l, &r)).norm() < 1e-12);
        }
    }
}

#[test]
fn commutativity_shadow() {
    // single-valuedness makes 𝕐(u; z)v continuous across the cut of log z
    let alg = algebra(1);
    let spec = *alg.spec();
    let u = pure(&spec, (1, &[]), (-1, &[]));
    let v = pure(&spec, (1, &[1]), (-1, &[]));
    let above = alg
        .apply(&u, &v, Complex64::new(0.6, 1e-12), 6)
        .unwrap()
        .value;
    let below = alg
        .apply(&u, &v, Complex64::new(0.6, -1e-12), 6)
        .unwrap()
        .value;
    for l in fullfield_lattice::fock::basis_states(&spec, 0, 6) {
        for r in fullfield_lattice::fock::basis_states(&spec, 0, 6) {
            assert!((above.component(&l, &r) - below.component(&l, &r)).norm() < 1e-9);
        }
    }
}

#[test]
fn samples_are_deterministic() {
    let spec = LatticeSpec::new(1, 8).unwrap();
    let a = assoc_samples(&spec, 5, 3);
    let b = assoc_samples(&spec, 5, 3);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!((x.z1, x.z2), (y.z1, y.z2));
    }
    assert_eq!(skew_samples(&spec, 3, 3)[0].z, Complex64::new(0.7, 0.2));
}

#[test]
fn region_is_enforced() {
    let alg = algebra(1);
    let mut s: AssocSample = assoc_samples(alg.spec(), 1, 1).remove(0);
    s.z2 = s.z1 * 1.5;
    assert!(matches!(
        check_associativity(&alg, &[s], 8, 1e-6),
        Err(LatticeError::OutsideRegion { .. })
    ));
}

#[test]
fn contour_order_is_enforced() {
    let alg = algebra(1);
    let samples = jacobi_samples(alg.spec(), 1, 1);
    let bad = Contour {
        r_in: 0.6,
        ..Contour::default()
    };
    assert_eq!(
        check_jacobi_residues(&alg, &samples, &bad, 8, 1e-5).unwrap_err(),
        LatticeError::ContourOrder
    );
}

#[test]
fn check_names_parse() {
    assert_eq!("skew".parse::<CheckKind>().unwrap(), CheckKind::Skew);
    assert!("bogus".parse::<CheckKind>().is_err());
    assert_eq!(CheckKind::parse_list("all").unwrap().len(), 6);
    assert_eq!(
        CheckKind::parse_list("jacobi, assoc,assoc").unwrap(),
        vec![CheckKind::Assoc, CheckKind::Jacobi]
    );
}

#[test]
fn every_check_passes_for_k1() {
    let alg = algebra(1);
    let opts = RunOptions {
        samples: 5,
        seed: 1,
        tol: 1e-6,
    };
    for kind in CheckKind::ALL {
        let opts = if kind == CheckKind::Jacobi {
            RunOptions {
                tol: 1e-5,
                samples: 3,
                ..opts
            }
        } else {
            opts
        };
        let report = run_check(&alg, kind, &opts).unwrap();
        assert!(report.passed(), "{kind}: {report}");
    }
}

#[test]
fn skew_and_jacobi_pass_for_k2() {
    let alg = algebra(2);
    let opts = RunOptions {
        samples: 3,
        seed: 5,
        tol: 1e-9,
    };
    assert!(run_check(&alg, CheckKind::Skew, &opts).unwrap().passed());
    assert!(
        run_check(&alg, CheckKind::Jacobi, &RunOptions { tol: 1e-5, ..opts })
            .unwrap()
            .passed()
    );
}
