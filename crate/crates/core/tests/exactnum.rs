//! Exact cyclotomic arithmetic, embedding and square roots.

use fullfield_core::exactnum::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn z(n: u32, e: i64) -> CycScalar {
    CycScalar::zeta_power(&field(n).unwrap(), e)
}

#[test]
fn i_plus_minus_i_cancels() {
    let s = &z(4, 1) + &z(4, 3);
    assert!(s.is_zero());
}

#[test]
fn sqrt2_squared_is_two() {
    let r2 = &z(8, 1) + &z(8, 7);
    let f = field(8).unwrap();
    assert_eq!(&r2 * &r2, CycScalar::from_integer(&f, 2));
}

#[test]
fn inverse_of_one_plus_zeta5_solves_linear_system() {
    // ℚ(ζ₅) = ℚ(ζ₁₀) with ζ₅ = ζ₁₀²
    let f = field(10).unwrap();
    let a = &CycScalar::one(&f) + &z(10, 2);
    let inv = a.inverse().unwrap();
    assert!((&inv * &a).is_one());
    // independent oracle: solve M x = e0 over Q where M is multiplication by a
    let d = f.degree();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::from_integer(0.into()); d + 1]; d];
    for j in 0..d {
        let col = &a * &z(10, j as i64);
        for i in 0..d {
            m[i][j] = col.coeff(i);
        }
    }
    m[0][d] = BigRational::from_integer(1.into());
    for c in 0..d {
        let p = (c..d)
            .find(|&r| m[r][c] != BigRational::from_integer(0.into()))
            .unwrap();
        m.swap(c, p);
        let pv = m[c][c].clone();
        for k in 0..=d {
            m[c][k] = &m[c][k] / &pv;
        }
        for r in 0..d {
            if r != c {
                let fct = m[r][c].clone();
                for k in 0..=d {
                    let t = &fct * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    for i in 0..d {
        assert_eq!(inv.coeff(i), m[i][d]);
    }
}

#[test]
fn roots_of_unity() {
    let f8 = field(8).unwrap();
    assert_eq!(root_of_unity(&f8, 1, 4).unwrap(), z(8, 1));
    for n in [2u32, 4, 6, 8, 16] {
        let f = field(n).unwrap();
        assert!(root_of_unity(&f, 2, 1).unwrap().is_one());
    }
    let f32 = field(32).unwrap();
    let r = root_of_unity(&f32, 1, 16).unwrap();
    assert_eq!(r, z(32, 1));
    let e = embed(&r, 20).to_complex64();
    let t = std::f64::consts::PI / 16.0;
    assert!((e - Complex64::new(t.cos(), t.sin())).norm() < 1e-12);
    assert!(root_of_unity(&field(4).unwrap(), 1, 16).is_err());
}

#[test]
fn sqrt_examples() {
    let f8 = field(8).unwrap();
    let two = CycScalar::from_integer(&f8, 2);
    let r = sqrt_in_field(&two).unwrap();
    assert_eq!(r, &z(8, 1) + &z(8, 7));
    assert!(sqrt_in_field(&CycScalar::one(&f8)).unwrap().is_one());
    let f4 = field(4).unwrap();
    assert!(sqrt_in_field(&CycScalar::from_integer(&f4, 2)).is_none());
    // (u+vi)^2 = 2 has no rational solution: u v = 0 and u^2 - v^2 = 2 force u^2 = 2
    assert_eq!(
        sqrt_in_field(&CycScalar::from_integer(&f4, -1)).unwrap(),
        z(4, 1)
    );
    // i in Q(ζ₈): principal root ζ₈
    assert_eq!(sqrt_in_field(&z(8, 2)).unwrap(), z(8, 1));
    // -i: arg 3π/2, principal root has arg 3π/4
    assert_eq!(sqrt_in_field(&z(8, 6)).unwrap(), z(8, 3));
    // 1/√2 has no square root in Q(ζ₃₂)
    let inv_r2 = (&z(32, 4) + &z(32, 28)).inverse().unwrap();
    assert!(sqrt_in_field(&inv_r2).is_none());
    // golden ratio conjugate data in Q(ζ₂₀): √5 exists
    let f20 = field(20).unwrap();
    let five = CycScalar::from_integer(&f20, 5);
    let s5 = sqrt_in_field(&five).unwrap();
    assert_eq!(&s5 * &s5, five);
    assert!((embed_f64(&s5).re - 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn embedding_examples() {
    let e = embed(&z(8, 1), 30);
    let (re, im) = e.to_decimal_strings(8);
    assert_eq!(re, "0.70710678");
    assert_eq!(im, "0.70710678");
    let f8 = field(8).unwrap();
    let zero = embed(&CycScalar::zero(&f8), 10).to_complex64();
    assert_eq!(zero, Complex64::new(0.0, 0.0));
    let r2 = embed(&(&z(8, 1) + &z(8, 7)), 30).to_complex64();
    assert!((r2.re - std::f64::consts::SQRT_2).abs() < 1e-15 && r2.im.abs() < 1e-15);
    // 30-digit agreement with a Machin pi check
    let p = pi(200);
    let (s, _) = HpComplex {
        re: p,
        im: 0.into(),
        bits: 200,
    }
    .to_decimal_strings(30);
    assert_eq!(s, "3.141592653589793238462643383280");
}

#[test]
fn literal_round_trip() {
    let f = field(16).unwrap();
    let terms = vec![
        (3i64, BigInt::from(-2), BigInt::from(6)),
        (12, BigInt::from(1), BigInt::from(1)),
    ];
    let a = CycScalar::from_terms(&f, &terms).unwrap();
    let b = CycScalar::from_terms(&f, &a.to_terms()).unwrap();
    assert_eq!(a, b);
    assert!(CycScalar::from_terms(&f, &[]).unwrap().is_zero());
}

#[test]
fn field_mismatch_and_zero_division() {
    let a = z(8, 1);
    let b = z(16, 1);
    assert!(matches!(
        a.try_add(&b),
        Err(ExactError::FieldMismatch { .. })
    ));
    assert_eq!(
        CycScalar::zero(&field(8).unwrap()).inverse(),
        Err(ExactError::DivisionByZero)
    );
}

fn scalar_strategy(n: u32) -> impl Strategy<Value = CycScalar> {
    let d = totient(n) as usize;
    prop::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |v| {
        let f = field(n).unwrap();
        let terms: Vec<_> = v
            .into_iter()
            .enumerate()
            .map(|(i, (p, q))| (i as i64, BigInt::from(p), BigInt::from(q)))
            .collect();
        CycScalar::from_terms(&f, &terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in scalar_strategy(16), b in scalar_strategy(16), c in scalar_strategy(16)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn conjugation_is_involutive(a in scalar_strategy(20)) {
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in scalar_strategy(12), b in scalar_strategy(12)) {
        let tol = 10.0 * 1e-15;
        let ea = embed(&a, 15).to_complex64();
        let eb = embed(&b, 15).to_complex64();
        let scale = 1.0 + ea.norm() * eb.norm();
        prop_assert!((embed(&(&a * &b), 15).to_complex64() - ea * eb).norm() < tol * scale * 100.0);
        prop_assert!((embed(&(&a + &b), 15).to_complex64() - (ea + eb)).norm() < tol * scale * 100.0);
    }

    #[test]
    fn inverse_is_exact(a in scalar_strategy(16)) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn sqrt_of_square_is_principal(a in scalar_strategy(8)) {
        let sq = &a * &a;
        let x = sqrt_in_field(&sq).expect("squares have roots");
        prop_assert_eq!(&x * &x, sq.clone());
        prop_assert!(x == a || x == -&a);
        let e = embed(&x, 30).to_complex64();
        let arg = e.im.atan2(e.re);
        prop_assert!(sq.is_zero() || (arg >= -1e-12 && arg < std::f64::consts::PI));
    }
}
