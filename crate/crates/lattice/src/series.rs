//! Truncated series Σ c_{r,s} z^r z̄^s.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::vertex::{side_power, Side};

/// Pair of exponents (r, s) of z^r z̄^s.
pub type Exponents = (BigRational, BigRational);

/// z^r z̄^s with z^r on the branch 0 ≤ arg z < 2π and z̄^s = e^{s·conj(log z)}.
pub fn monomial(z: Complex64, e: &Exponents) -> Complex64 {
    let r = e.0.to_f64().expect("finite exponent");
    let s = e.1.to_f64().expect("finite exponent");
    side_power(z, r, Side::Left) * side_power(z, s, Side::Right)
}

/// Finite map (r, s) → coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BivariateSeries<T> {
    terms: BTreeMap<Exponents, T>,
}

impl<T> BivariateSeries<T> {
    pub fn new() -> Self {
        BivariateSeries {
            terms: BTreeMap::new(),
        }
    }

    /// Coefficient slot of z^r z̄^s, created empty if absent.
    pub fn entry(&mut self, e: Exponents) -> &mut T
    where
        T: Default,
    {
        self.terms.entry(e).or_default()
    }

    pub fn get(&self, e: &Exponents) -> Option<&T> {
        self.terms.get(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Retained exponent pairs with r − s ∉ ℤ.
    pub fn violations(&self) -> impl Iterator<Item = &Exponents> {
        self.terms.keys().filter(|(r, s)| !(r - s).is_integer())
    }

    /// Whether r − s ∈ ℤ on every retained term.
    pub fn is_single_valued(&self) -> bool {
        self.violations().next().is_none()
    }

    /// Applies `f` to every coefficient.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> BivariateSeries<U> {
        BivariateSeries {
            terms: self.terms.iter().map(|(e, t)| (e.clone(), f(t))).collect(),
        }
    }
}

impl BivariateSeries<Complex64> {
    /// Σ c_{r,s} z^r z̄^s.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|(e, c)| c * monomial(z, e)).sum()
    }
}
