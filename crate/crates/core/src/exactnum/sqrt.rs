//! Square roots inside ℚ(ζ_N) by Galois-embedding sign search with exact
//! verification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hiprec::{embed_bits, HpComplex};
use super::scalar::CycScalar;

/// Largest number of independent embedding signs searched exhaustively.
const MAX_SIGN_BITS: usize = 20;

/// Best rational approximation of `x` among continued-fraction convergents
/// that lies within 2^{-tol_bits}.
fn recognize(x: &BigRational, tol_bits: u32) -> Option<BigRational> {
    let tol = BigRational::new(BigInt::one(), BigInt::one() << tol_bits);
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let qmax = BigInt::one() << (tol_bits / 2);
    let mut r = x.clone();
    for _ in 0..400 {
        let a = r.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > qmax {
            return None;
        }
        let cand = BigRational::new(p2.clone(), q2.clone());
        if (&cand - x).abs() < tol {
            return Some(cand);
        }
        let frac = &r - BigRational::from_integer(a);
        if frac.is_zero() {
            return Some(cand);
        }
        r = frac.recip();
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

/// Principal square root of `a` inside its field, if one exists.
///
/// The returned x satisfies x·x = a exactly and its standard embedding has
/// argument in [0, π).
pub fn sqrt_in_field(a: &CycScalar) -> Option<CycScalar> {
    let f = a.field().clone();
    if a.is_zero() {
        return Some(CycScalar::zero(&f));
    }
    // Real elements: decide the branch exactly from the sign.
    if let Some(q) = a.as_rational() {
        if q.is_positive() {
            if let Some(r) = rational_sqrt(&q) {
                return Some(CycScalar::from_rational(&f, &r));
            }
        }
    }
    if f.degree() == 1 {
        return None;
    }
    let n = f.order();
    let reps: Vec<u32> = f.units().iter().copied().filter(|&t| 2 * t < n).collect();
    if reps.len() > MAX_SIGN_BITS + 1 {
        return None;
    }
    let mut bits = 128 + 2 * a.height_bits() as u32;
    for _attempt in 0..2 {
        if let Some(x) = search(a, &reps, bits) {
            return Some(x);
        }
        bits *= 2;
    }
    None
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn search(a: &CycScalar, reps: &[u32], bits: u32) -> Option<CycScalar> {
    let f = a.field().clone();
    let n = f.order();
    let deg = f.degree();
    let roots: Vec<HpComplex> = reps
        .iter()
        .map(|&t| embed_bits(&a.galois(t), bits).sqrt())
        .collect();
    let duals = f.trace_dual_basis();
    let dual_scalars: Vec<CycScalar> = duals
        .iter()
        .map(|c| CycScalar::from_coords(&f, c))
        .collect();
    // emb[i][r] = σ_{reps[r]}(ω_i)
    let emb: Vec<Vec<HpComplex>> = dual_scalars
        .iter()
        .map(|w| {
            reps.iter()
                .map(|&t| embed_bits(&w.galois(t), bits))
                .collect()
        })
        .collect();
    let free = reps.len() - 1;
    for mask in 0u64..(1u64 << free) {
        // c_i = Σ_t σ_t(x)σ_t(ω_i) = 2·Re Σ_{reps} σ_t(x)σ_t(ω_i)
        let signed: Vec<HpComplex> = roots
            .iter()
            .enumerate()
            .map(|(r, z)| {
                if r > 0 && (mask >> (r - 1)) & 1 == 1 {
                    z.neg()
                } else {
                    z.clone()
                }
            })
            .collect();
        let mut coords = Vec::with_capacity(deg);
        let mut ok = true;
        for row in emb.iter() {
            let mut acc = HpComplex::zero(bits);
            for (z, w) in signed.iter().zip(row) {
                acc = acc.add(&z.mul(w));
            }
            let re = acc.re_rational() * BigRational::from_integer(BigInt::from(2));
            match recognize(&re, bits * 3 / 4) {
                Some(c) => coords.push(c),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let x = CycScalar::from_coords(&f, &coords);
        if &(&x * &x) == a {
            debug_assert!(n >= 2);
            return Some(x);
        }
    }
    None
}
