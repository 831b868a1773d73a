//! Binary fixed-point complex numbers used to embed field elements into ℂ
//! at a requested number of decimal digits.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::CycField;
use super::scalar::CycScalar;

/// A complex number (re + i·im)/2^bits with integer re, im.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

/// Number of fraction bits carrying `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn shr_round(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

impl HpComplex {
    pub fn zero(bits: u32) -> Self {
        HpComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
            bits,
        }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let re = (q.numer() << bits) / q.denom();
        HpComplex {
            re,
            im: BigInt::zero(),
            bits,
        }
    }

    /// Changes the number of fraction bits, rounding when reducing.
    pub fn with_bits(&self, bits: u32) -> Self {
        if bits >= self.bits {
            let s = bits - self.bits;
            HpComplex {
                re: &self.re << s,
                im: &self.im << s,
                bits,
            }
        } else {
            let s = self.bits - bits;
            HpComplex {
                re: shr_round(self.re.clone(), s),
                im: shr_round(self.im.clone(), s),
                bits,
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        HpComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpComplex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        HpComplex {
            re: -&self.re,
            im: -&self.im,
            bits: self.bits,
        }
    }

    pub fn conj(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: -&self.im,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let b = self.bits;
        HpComplex {
            re: shr_round(&self.re * &o.re - &self.im * &o.im, b),
            im: shr_round(&self.re * &o.im + &self.im * &o.re, b),
            bits: b,
        }
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        HpComplex {
            re: (&self.re * q.numer()) / q.denom(),
            im: (&self.im * q.numer()) / q.denom(),
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let b = self.bits;
        let n2 = &o.re * &o.re + &o.im * &o.im;
        let re = (&self.re * &o.re + &self.im * &o.im) << b;
        let im = (&self.im * &o.re - &self.re * &o.im) << b;
        HpComplex {
            re: re / &n2,
            im: im / &n2,
            bits: b,
        }
    }

    /// Squared modulus as fixed point.
    pub fn abs2(&self) -> BigInt {
        shr_round(&self.re * &self.re + &self.im * &self.im, self.bits)
    }

    /// Principal square root with the branch arg ∈ [0, 2π), so the result has
    /// argument in [0, π).
    pub fn sqrt(&self) -> Self {
        let b = self.bits;
        let r = (&self.re * &self.re + &self.im * &self.im).sqrt();
        let u2 = (&r + &self.re) << b;
        let v2 = (&r - &self.re) << b;
        let u = (u2 / 2u32).sqrt();
        let v = (v2 / 2u32).sqrt();
        let re = if self.im.is_negative() { -u } else { u };
        HpComplex { re, im: v, bits: b }
    }

    pub fn to_complex64(&self) -> Complex64 {
        let scale = 2f64.powi(-(self.bits.min(1000) as i32));
        let f = |x: &BigInt| -> f64 {
            let bl = x.bits();
            if bl > 900 {
                let s = (bl - 900) as u32;
                (x >> s).to_f64().unwrap_or(f64::NAN) * 2f64.powi(s as i32) * scale
            } else {
                x.to_f64().unwrap_or(f64::NAN) * scale
            }
        };
        Complex64::new(f(&self.re), f(&self.im))
    }

    /// |self|² < 2^{-2·tol_bits}
    pub fn is_small(&self, tol_bits: u32) -> bool {
        let a2 = &self.re * &self.re + &self.im * &self.im;
        // a2 has 2·bits fraction bits
        let lim = BigInt::one() << (2 * self.bits).saturating_sub(2 * tol_bits);
        a2 < lim
    }

    /// Real part as an exact rational re/2^bits.
    pub fn re_rational(&self) -> BigRational {
        BigRational::new(self.re.clone(), BigInt::one() << self.bits)
    }

    /// Decimal rendering of the real and imaginary parts with `digits` places.
    pub fn to_decimal_strings(&self, digits: u32) -> (String, String) {
        let f = |x: &BigInt| -> String {
            let ten = BigInt::from(10u32).pow(digits);
            let scaled = shr_round(x * &ten, self.bits);
            let neg = scaled.is_negative();
            let s = scaled.abs().to_string();
            let s = format!("{:0>width$}", s, width = digits as usize + 1);
            let (ip, fp) = s.split_at(s.len() - digits as usize);
            format!("{}{}.{}", if neg { "-" } else { "" }, ip, fp)
        };
        (f(&self.re), f(&self.im))
    }
}

/// arctan(1/x) for integer x, fixed point with `bits` fraction bits.
fn arctan_inv(x: u32, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = &one / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term = &term / &x2;
        if term.is_zero() {
            break;
        }
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

/// π with `bits` fraction bits (Machin's formula).
pub fn pi(bits: u32) -> BigInt {
    let g = bits + 16;
    let v = arctan_inv(5, g) * 16 - arctan_inv(239, g) * 4;
    shr_round(v, 16)
}

/// (cos θ, sin θ) for a fixed-point θ, by Taylor series.
fn cos_sin(theta: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut n = 1u64;
    loop {
        term = shr_round(&term * theta, bits) / BigInt::from(n + 1);
        if term.is_zero() {
            break;
        }
        let k = n + 1;
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        n += 1;
    }
    (cos, sin)
}

type PowerCache = Mutex<HashMap<(u32, u32), Arc<Vec<HpComplex>>>>;

fn power_cache() -> &'static PowerCache {
    static CACHE: OnceLock<PowerCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ζ_N^j for 0 ≤ j < N with `bits` fraction bits.
pub fn zeta_powers(order: u32, bits: u32) -> Arc<Vec<HpComplex>> {
    if let Some(v) = power_cache().lock().expect("cache").get(&(order, bits)) {
        return v.clone();
    }
    let g = bits + 64;
    let theta = (pi(g) * 2) / BigInt::from(order);
    let (c, s) = cos_sin(&theta, g);
    let z = HpComplex {
        re: c,
        im: s,
        bits: g,
    };
    let mut acc = HpComplex {
        re: BigInt::one() << g,
        im: BigInt::zero(),
        bits: g,
    };
    let mut out = Vec::with_capacity(order as usize);
    for _ in 0..order {
        out.push(acc.with_bits(bits));
        acc = acc.mul(&z);
    }
    let out = Arc::new(out);
    power_cache()
        .lock()
        .expect("cache")
        .insert((order, bits), out.clone());
    out
}

/// Embedding under ζ ↦ e^{2πi/N} with `bits` fraction bits.
pub fn embed_bits(a: &CycScalar, bits: u32) -> HpComplex {
    let f: &CycField = a.field();
    let extra = super::field::max_bits(a.numerators()) as u32 + 8;
    let wb = bits + extra;
    let pw = zeta_powers(f.order(), wb);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (j, c) in a.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        re += c * &pw[j].re;
        im += c * &pw[j].im;
    }
    let den = a.denominator();
    HpComplex {
        re: re / den,
        im: im / den,
        bits: wb,
    }
    .with_bits(bits)
}

/// Embedding accurate to `precision` decimal digits.
pub fn embed(a: &CycScalar, precision: u32) -> HpComplex {
    embed_bits(a, bits_for_digits(precision.max(1)))
}

/// Double-precision embedding.
pub fn embed_f64(a: &CycScalar) -> Complex64 {
    embed(a, 20).to_complex64()
}
