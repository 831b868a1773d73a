//! Exact elements of ℚ(ζ_N) stored as integer power-basis numerators over a
//! single positive denominator, kept in lowest terms.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{field, CycField};
use super::ExactError;

/// An element of the cyclotomic field ℚ(ζ_N) in canonical reduced form.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Arithmetic selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Mul,
    InverseOfA,
    ConjugateOfA,
}

/// Dispatches one field operation; the unary kinds ignore `b`.
pub fn arith(a: &CycScalar, b: &CycScalar, kind: ArithKind) -> Result<CycScalar, ExactError> {
    match kind {
        ArithKind::Add => a.try_add(b),
        ArithKind::Mul => a.try_mul(b),
        ArithKind::InverseOfA => a.inverse(),
        ArithKind::ConjugateOfA => Ok(a.conjugate()),
    }
}

impl CycScalar {
    fn from_parts(field: Arc<CycField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        CycScalar { field, num, den }
    }

    /// The zero element of the given field.
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycScalar {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    /// The unit element of the given field.
    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_integer(field, 1)
    }

    /// An integer constant.
    pub fn from_integer(field: &Arc<CycField>, n: i64) -> Self {
        Self::from_rational(field, &BigRational::from_integer(BigInt::from(n)))
    }

    /// A rational constant.
    pub fn from_rational(field: &Arc<CycField>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Self::from_parts(field.clone(), num, q.denom().clone())
    }

    /// ζ_N^e for any integer e.
    pub fn zeta_power(field: &Arc<CycField>, e: i64) -> Self {
        CycScalar {
            field: field.clone(),
            num: field.power(e).to_vec(),
            den: BigInt::one(),
        }
    }

    /// Builds Σ (num/den)·ζ^e from literal triples; exponents are reduced mod N.
    pub fn from_terms(
        field: &Arc<CycField>,
        terms: &[(i64, BigInt, BigInt)],
    ) -> Result<Self, ExactError> {
        let mut acc = Self::zero(field);
        for (e, n, d) in terms {
            if d.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            let q = BigRational::new(n.clone(), d.clone());
            acc = &acc + &(&Self::zeta_power(field, *e) * &Self::from_rational(field, &q));
        }
        Ok(acc)
    }

    /// Builds an element from power-basis rational coordinates.
    pub fn from_coords(field: &Arc<CycField>, coords: &[BigRational]) -> Self {
        assert_eq!(coords.len(), field.degree());
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(field.clone(), num, den)
    }

    /// Literal triples (exponent, numerator, denominator) of the canonical form,
    /// one per nonzero power-basis coordinate.
    pub fn to_terms(&self) -> Vec<(i64, BigInt, BigInt)> {
        self.coords()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    /// The shared field context.
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// The field order N.
    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Power-basis rational coordinates.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Coordinate of ζ^j in the canonical power basis.
    pub fn coeff(&self, j: usize) -> BigRational {
        BigRational::new(self.num[j].clone(), self.den.clone())
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.field.order() != other.field.order() {
            Err(ExactError::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + b)
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &other.den + b * &self.den)
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Ok(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        let d = self.field.degree();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..d].to_vec();
        for (j, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.power(j as i64).iter().enumerate() {
                if !r.is_zero() {
                    num[i] += c * r;
                }
            }
        }
        Ok(Self::from_parts(
            self.field.clone(),
            num,
            &self.den * &other.den,
        ))
    }

    /// Galois automorphism σ_t : ζ ↦ ζ^t (t coprime to N).
    pub fn galois(&self, t: u32) -> Self {
        let d = self.field.degree();
        let mut num = vec![BigInt::zero(); d];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, r) in self.field.power(i as i64 * t as i64).iter().enumerate() {
                if !r.is_zero() {
                    num[k] += c * r;
                }
            }
        }
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Complex conjugation, the exponent map k ↦ N − k.
    pub fn conjugate(&self) -> Self {
        self.galois(self.field.order() - 1)
    }

    /// Field norm down to ℚ.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for &t in self.field.units() {
            if t != 1 {
                acc = &acc * &self.galois(t);
            }
        }
        acc.as_rational().expect("norm lies in Q")
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, &q.recip()));
        }
        let mut co = Self::one(&self.field);
        for &t in self.field.units() {
            if t != 1 {
                co = &co * &self.galois(t);
            }
        }
        let n = (&co * self).as_rational().expect("norm lies in Q");
        Ok(&co * &Self::from_rational(&self.field, &n.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inverse()?)
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.field);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Returns j with self = ζ^j, if self is a root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        if !self.den.is_one() {
            return None;
        }
        (0..self.field.order()).find(|&j| self.field.power(j as i64) == &self.num[..])
    }

    /// Bit size of the largest numerator and the denominator, a crude height.
    pub fn height_bits(&self) -> u64 {
        super::field::max_bits(&self.num).max(self.den.bits())
    }
}

/// e^{πi p/q} in ℚ(ζ_N); requires 2q | N.
pub fn root_of_unity(field: &Arc<CycField>, p: i64, q: u64) -> Result<CycScalar, ExactError> {
    let n = field.order() as u64;
    if q == 0 || n % (2 * q) != 0 {
        return Err(ExactError::OrderTooSmall {
            order: field.order(),
            denominator: q,
        });
    }
    let step = (n / (2 * q)) as i64;
    Ok(CycScalar::zeta_power(field, p * step))
}

/// e^{πi r} for a rational r, in ℚ(ζ_N).
pub fn phase(field: &Arc<CycField>, r: &BigRational) -> Result<CycScalar, ExactError> {
    let q: u64 = r
        .denom()
        .try_into()
        .map_err(|_| ExactError::OrderTooSmall {
            order: field.order(),
            denominator: u64::MAX,
        })?;
    let n = field.order() as u64;
    if n % (2 * q) != 0 {
        return Err(ExactError::OrderTooSmall {
            order: field.order(),
            denominator: q,
        });
    }
    let p = (r.numer() % BigInt::from(2 * q)).try_into().unwrap_or(0i64);
    root_of_unity(field, p, q)
}

/// Convenience constructor for the shared field of order N.
pub fn scalar_field(order: u32) -> Result<Arc<CycField>, ExactError> {
    field(order)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycScalar {}

impl Hash for CycScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(rhs).expect("field order mismatch")
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.try_add(&-rhs).expect("field order mismatch")
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.try_mul(rhs).expect("field order mismatch")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.field.order();
        let mut first = true;
        for (j, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·ζ{n}")?,
                _ => write!(f, "({c})·ζ{n}^{j}")?,
            }
        }
        Ok(())
    }
}
