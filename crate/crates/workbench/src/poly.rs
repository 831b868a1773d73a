//! Sparse multivariate polynomials over ℚ(ζ_N).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use fullfield_core::exactnum::{CycField, CycScalar};

/// Variable index.
pub type Var = usize;

/// Monomial as sorted (variable, exponent) pairs with positive exponents.
pub type Mono = Vec<(Var, u32)>;

/// Polynomial with exact coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, CycScalar>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m: BTreeMap<Var, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *m.entry(v).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: CycScalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: Var, field: &Arc<CycField>) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(v, 1)], CycScalar::one(field));
        p
    }

    pub fn terms(&self) -> &BTreeMap<Mono, CycScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32, field: &Arc<CycField>) -> Poly {
        let mut r = Poly::constant(CycScalar::one(field));
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn degree_in(&self, x: Var) -> u32 {
        self.terms.keys().map(|m| exponent(m, x)).max().unwrap_or(0)
    }

    /// The constant term, if the polynomial has no variables.
    pub fn as_constant(&self, field: &Arc<CycField>) -> Option<CycScalar> {
        match self.terms.len() {
            0 => Some(CycScalar::zero(field)),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Replaces x by num/den and multiplies by den^deg so the result stays polynomial.
    pub fn substitute(&self, x: Var, num: &Poly, den: &Poly, field: &Arc<CycField>) -> Poly {
        let d = self.degree_in(x);
        if d == 0 {
            return self.clone();
        }
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let e = exponent(m, x);
            let rest: Mono = m.iter().copied().filter(|(v, _)| *v != x).collect();
            let mut base = Poly::zero();
            base.add_term(rest, c.clone());
            r = r.add(&base.mul(&num.pow(e, field)).mul(&den.pow(d - e, field)));
        }
        r
    }

    /// Replaces x by a value.
    pub fn assign(&self, x: Var, v: &CycScalar) -> Poly {
        if self.degree_in(x) == 0 {
            return self.clone();
        }
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let e = exponent(m, x);
            let rest: Mono = m.iter().copied().filter(|(w, _)| *w != x).collect();
            let val = if e == 0 {
                c.clone()
            } else {
                c * &v.pow(e as i64).expect("nonnegative power")
            };
            r.add_term(rest, val);
        }
        r
    }

    /// Divides by the largest common monomial in `nonzero` variables and makes
    /// the coefficient of the largest monomial equal to one.
    pub fn strip(&self, nonzero: &BTreeSet<Var>) -> Poly {
        let Some(first) = self.terms.keys().next() else {
            return Poly::zero();
        };
        let mut common: BTreeMap<Var, u32> = first
            .iter()
            .copied()
            .filter(|(v, _)| nonzero.contains(v))
            .collect();
        for m in self.terms.keys() {
            common = common
                .into_iter()
                .filter_map(|(v, e)| {
                    let f = exponent(m, v);
                    (f > 0).then_some((v, e.min(f)))
                })
                .collect();
        }
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let nm: Mono = m
                .iter()
                .filter_map(|&(v, e)| {
                    let f = e - common.get(&v).copied().unwrap_or(0);
                    (f > 0).then_some((v, f))
                })
                .collect();
            r.add_term(nm, c.clone());
        }
        let inv = r
            .terms
            .values()
            .next_back()
            .expect("nonempty")
            .inverse()
            .expect("nonzero coefficient");
        r.terms.values_mut().for_each(|c| *c = &*c * &inv);
        r
    }

    /// Coefficients of the powers of x when x is the only variable.
    pub fn univariate(&self, x: Var) -> Option<BTreeMap<u32, CycScalar>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.iter().any(|(v, _)| *v != x) {
                return None;
            }
            out.insert(exponent(m, x), c.clone());
        }
        Some(out)
    }

    /// Splits p = A·x + B for x of degree one.
    pub fn linear_split(&self, x: Var) -> (Poly, Poly) {
        let mut a = Poly::zero();
        let mut b = Poly::zero();
        for (m, c) in &self.terms {
            if exponent(m, x) == 1 {
                let rest: Mono = m.iter().copied().filter(|(v, _)| *v != x).collect();
                a.add_term(rest, c.clone());
            } else {
                b.add_term(m.clone(), c.clone());
            }
        }
        (a, b)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn exponent(m: &Mono, x: Var) -> u32 {
    m.iter().find(|(v, _)| *v == x).map_or(0, |(_, e)| *e)
}
