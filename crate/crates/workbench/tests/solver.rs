use fullfield_core::chiraldata::{verify_pentagon_tensor, FTensor};
use fullfield_core::exactnum::{field, CycScalar};
use fullfield_core::fusiondata::FusionData;
use fullfield_lattice::derive::derive_f_entry;
use fullfield_lattice::LatticeSpec;
use fullfield_workbench::fixtures::{fibonacci_fusion, ising_fusion};
use fullfield_workbench::{sign_gauge_between, solve_pentagon, SolveError};
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn z2_solutions_match_the_lattice_up_to_gauge() {
    let spec = LatticeSpec::new(1, 8).unwrap();
    let fusion = spec.fusion().unwrap();
    let fld = field(8).unwrap();
    let mut lattice = FTensor::new();
    for k in fullfield_core::chiraldata::admissible_keys(&fusion) {
        lattice.insert(k, [0; 4], derive_f_entry(&spec, k, 8).unwrap());
    }
    let solutions = solve_pentagon(&fusion, &fld).unwrap();
    assert_eq!(solutions.len(), 2);
    let matching: Vec<_> = solutions
        .iter()
        .filter(|f| sign_gauge_between(&fusion, f, &lattice).is_some())
        .collect();
    assert_eq!(
        matching.len(),
        1,
        "exactly one gauge class matches the lattice"
    );
}

#[test]
fn sign_gauge_detects_nontrivial_classes() {
    let fusion = FusionData::cyclic(2, vec![q(0, 1), q(1, 4)]).unwrap();
    let sols = solve_pentagon(&fusion, &field(8).unwrap()).unwrap();
    assert!(sign_gauge_between(&fusion, &sols[0], &sols[0]).is_some());
    assert!(sign_gauge_between(&fusion, &sols[0], &sols[1]).is_none());
}

#[test]
fn ising_block_is_hadamard_type() {
    let fusion = ising_fusion().unwrap();
    let fld = field(32).unwrap();
    let sols = solve_pentagon(&fusion, &fld).unwrap();
    assert!(!sols.is_empty());
    for f in &sols {
        assert!(verify_pentagon_tensor(&fusion, &fld, f).passed());
        // the block F[s s s s] on (a₅, a₆) ∈ {1, e}² is conjugate to H/√2 by a
        // diagonal gauge: nonzero entries, trace zero, square one
        let m = |a5: usize, a6: usize| f.get([1, 1, 1, 1, a5, a6], [0; 4]).unwrap().clone();
        let idx = [0, 2];
        for &i in &idx {
            for &j in &idx {
                assert!(!m(i, j).is_zero());
                let sq = idx
                    .iter()
                    .map(|&l| m(i, l).try_mul(&m(l, j)).unwrap())
                    .fold(CycScalar::zero(&fld), |a, b| a.try_add(&b).unwrap());
                let expected = if i == j {
                    CycScalar::one(&fld)
                } else {
                    CycScalar::zero(&fld)
                };
                assert_eq!(sq, expected);
            }
        }
        assert!(m(0, 0).try_add(&m(2, 2)).unwrap().is_zero());
    }
}

#[test]
fn fibonacci_solution_exists_over_q_zeta5() {
    let fusion = fibonacci_fusion().unwrap();
    let fld = field(20).unwrap();
    let sols = solve_pentagon(&fusion, &fld).unwrap();
    assert!(!sols.is_empty());
    for f in &sols {
        assert!(verify_pentagon_tensor(&fusion, &fld, f).passed());
        // entries live in ℚ(ζ₅): invariant under ζ₂₀ ↦ ζ₂₀^{11}, which fixes ζ₅ = ζ₂₀⁴
        for (_, v) in f.iter() {
            assert_eq!(v.galois(11), *v);
        }
    }
}

#[test]
fn too_small_field_has_no_solution() {
    let fusion = fibonacci_fusion().unwrap();
    assert_eq!(
        solve_pentagon(&fusion, &field(4).unwrap()),
        Err(SolveError::NoSolution(4))
    );
}

#[test]
fn multiplicities_above_one_are_rejected() {
    let mut rules = std::collections::BTreeMap::new();
    for (s, m) in [
        ((0, 0, 0), 1),
        ((0, 1, 1), 1),
        ((1, 0, 1), 1),
        ((1, 1, 0), 1),
        ((1, 1, 1), 2),
    ] {
        rules.insert(s, m);
    }
    let fusion = FusionData::new(
        vec!["1".into(), "x".into()],
        0,
        vec![0, 1],
        vec![q(0, 1), q(0, 1)],
        rules,
    )
    .unwrap();
    assert!(matches!(
        solve_pentagon(&fusion, &field(4).unwrap()),
        Err(SolveError::NotMultiplicityFree(_))
    ));
}
