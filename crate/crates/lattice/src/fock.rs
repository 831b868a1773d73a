//! Truncated Fock modules: basis states, vectors and the Heisenberg and
//! Virasoro actions.
//!
//! A state x^μ e^{qγ} is a monomial in the variables x_j, where α(−j) acts by
//! multiplication with x_j, α(j) by 2k·j·∂/∂x_j for j > 0 and α(0) by q.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::spec::LatticeSpec;

/// Coefficient ring of Fock vectors.
pub trait Coef: Clone + fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn from_rational(q: &BigRational) -> Self;

    fn one() -> Self {
        Self::from_int(1)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }
}

impl Coef for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Coef for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().expect("finite rational")
    }
}

impl Coef for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(q.to_f64().expect("finite rational"), 0.0)
    }
}

/// Partition stored as multiplicities m_j of the parts j = 1, 2, …
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Partition with the given parts, in any order.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut p = Partition::empty();
        for &j in parts {
            assert!(j > 0, "parts are positive");
            p = p.with_mult(j, p.mult(j) + 1);
        }
        p
    }

    pub fn mult(&self, j: u32) -> u32 {
        self.0.get(j as usize - 1).copied().unwrap_or(0)
    }

    /// Copy with multiplicity m for the part j.
    pub fn with_mult(&self, j: u32, m: u32) -> Self {
        let mut v = self.0.clone();
        let i = j as usize - 1;
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = m;
        while v.last() == Some(&0) {
            v.pop();
        }
        Partition(v)
    }

    /// Largest part size with nonzero multiplicity, or 0.
    pub fn max_part(&self) -> u32 {
        self.0.len() as u32
    }

    /// Σ j·m_j.
    pub fn level(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, m)| (i as u32 + 1) * m)
            .sum()
    }

    /// Pairs (j, m_j) with m_j > 0.
    pub fn mults(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(i, m)| (i as u32 + 1, *m))
    }

    /// Parts in decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (j, m) in self.mults() {
            out.extend(std::iter::repeat(j).take(m as usize));
        }
        out.reverse();
        out
    }

    /// All partitions of level at most `max_level`.
    pub fn up_to(max_level: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        for j in 1..=max_level {
            let mut next = Vec::new();
            for p in &out {
                let mut m = 0;
                while p.level() + m * j <= max_level {
                    next.push(p.with_mult(j, m));
                    m += 1;
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Basis state α(−μ₁)⋯α(−μ_m) e^{qγ}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub charge: i64,
    pub parts: Partition,
}

impl State {
    pub fn new(charge: i64, parts: Partition) -> Self {
        State { charge, parts }
    }

    /// The exponential e^{qγ}.
    pub fn exp(charge: i64) -> Self {
        State::new(charge, Partition::empty())
    }

    pub fn vacuum() -> Self {
        State::exp(0)
    }

    /// Conformal weight q²/4k + level.
    pub fn weight(&self, spec: &LatticeSpec) -> BigRational {
        spec.charge_weight(self.charge) + BigRational::from_integer(self.parts.level().into())
    }

    /// Weight above the lowest weight of the sector.
    pub fn rel_weight(&self, spec: &LatticeSpec) -> i64 {
        spec.charge_excess(self.charge) + self.parts.level() as i64
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e^{}", self.parts, self.charge)
    }
}

/// Polynomial part of a state in the variables x_j.
pub(crate) type Poly<C> = BTreeMap<Partition, C>;

pub(crate) fn poly_add<C: Coef>(p: &mut Poly<C>, m: Partition, c: C) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&m) {
        Some(old) => {
            let s = old.add(&c);
            if s.is_zero() {
                p.remove(&m);
            } else {
                *old = s;
            }
        }
        None => {
            p.insert(m, c);
        }
    }
}

/// Multiplication by x_j, dropping terms above `max_level`.
pub(crate) fn mul_var<C: Coef>(p: &Poly<C>, j: u32, max_level: i64) -> Poly<C> {
    let mut out = Poly::new();
    for (m, c) in p {
        if (m.level() + j) as i64 <= max_level {
            poly_add(&mut out, m.with_mult(j, m.mult(j) + 1), c.clone());
        }
    }
    out
}

/// ∂/∂x_j.
pub(crate) fn deriv<C: Coef>(p: &Poly<C>, j: u32) -> Poly<C> {
    let mut out = Poly::new();
    for (m, c) in p {
        let e = m.mult(j);
        if e > 0 {
            poly_add(
                &mut out,
                m.with_mult(j, e - 1),
                c.mul(&C::from_int(e as i64)),
            );
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Substitutes x_j → x_j + c for every j.
pub(crate) fn shift_all<C: Coef>(p: &Poly<C>, c: &C) -> Poly<C> {
    let mut out = Poly::new();
    for (m, coef) in p {
        let mut terms: Vec<(Partition, C)> = vec![(Partition::empty(), coef.clone())];
        for (j, e) in m.mults() {
            let mut next = Vec::new();
            for (mono, k) in &terms {
                let mut cpow = C::one();
                for s in (0..=e).rev() {
                    // x_j^s · c^{e−s} · binom(e, s)
                    let b = C::from_rational(&BigRational::from_integer(binomial(e, s)));
                    next.push((mono.with_mult(j, s), k.mul(&b).mul(&cpow)));
                    cpow = cpow.mul(c);
                }
            }
            terms = next;
        }
        for (mono, k) in terms {
            poly_add(&mut out, mono, k);
        }
    }
    out
}

/// Multiplication by exp(Σ_j c·x_j/j), dropping terms above `max_level`.
pub(crate) fn mul_exp<C: Coef>(p: &Poly<C>, c: &C, max_level: i64) -> Poly<C> {
    let mut cur: Poly<C> = p
        .iter()
        .filter(|(m, _)| m.level() as i64 <= max_level)
        .map(|(m, v)| (m.clone(), v.clone()))
        .collect();
    if c.is_zero() {
        return cur;
    }
    for j in 1..=max_level.max(0) as u32 {
        let step = c.mul(&C::from_ratio(1, j as i64));
        let mut next = Poly::new();
        for (m, v) in &cur {
            // Σ_s (c/j)^s x_j^s / s!
            let mut term = v.clone();
            let mut s = 0u32;
            loop {
                poly_add(&mut next, m.with_mult(j, m.mult(j) + s), term.clone());
                s += 1;
                if (m.level() + s * j) as i64 > max_level {
                    break;
                }
                term = term.mul(&step).mul(&C::from_ratio(1, s as i64));
            }
        }
        cur = next;
    }
    cur
}

/// Finite linear combination of basis states of one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVec<C> {
    pub sector: u32,
    pub terms: BTreeMap<State, C>,
}

/// Numeric Fock vector.
pub type FockVector = FockVec<Complex64>;

/// Exact Fock vector with rational coefficients.
pub type ExactVector = FockVec<BigRational>;

impl<C: Coef> FockVec<C> {
    pub fn zero(sector: u32) -> Self {
        FockVec {
            sector,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(spec: &LatticeSpec, s: State) -> Self {
        let mut v = FockVec::zero(spec.sector(s.charge));
        v.terms.insert(s, C::one());
        v
    }

    pub fn vacuum() -> Self {
        let mut v = FockVec::zero(0);
        v.terms.insert(State::vacuum(), C::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: State, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(old) => {
                let t = old.add(&c);
                if t.is_zero() {
                    self.terms.remove(&s);
                } else {
                    *old = t;
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(s.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut r = FockVec::zero(self.sector);
        for (s, c) in &self.terms {
            r.add_term(s.clone(), c.mul(k));
        }
        r
    }

    pub fn coefficient(&self, s: &State) -> C {
        self.terms.get(s).cloned().unwrap_or_else(C::zero)
    }

    /// Components of relative weight at most t.
    pub fn truncate(&self, spec: &LatticeSpec, t: i64) -> Self {
        FockVec {
            sector: self.sector,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.rel_weight(spec) <= t)
                .map(|(s, c)| (s.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest relative weight present.
    pub fn max_rel_weight(&self, spec: &LatticeSpec) -> i64 {
        self.terms
            .keys()
            .map(|s| s.rel_weight(spec))
            .max()
            .unwrap_or(0)
    }

    /// Applies a map on basis states linearly.
    pub fn map_basis(&self, sector: u32, f: impl Fn(&State) -> FockVec<C>) -> Self {
        let mut r = FockVec::zero(sector);
        for (s, c) in &self.terms {
            for (t, d) in f(s).terms {
                r.add_term(t, d.mul(c));
            }
        }
        r
    }

    /// Heisenberg mode α(n).
    pub fn alpha(&self, spec: &LatticeSpec, n: i64) -> Self {
        let two_k = spec.modulus();
        self.map_basis(self.sector, |s| {
            let mut out = FockVec::zero(self.sector);
            let p: Poly<C> = Poly::from([(s.parts.clone(), C::one())]);
            let r = match n.cmp(&0) {
                std::cmp::Ordering::Less => mul_var(&p, (-n) as u32, i64::MAX),
                std::cmp::Ordering::Equal => p
                    .iter()
                    .map(|(m, c)| (m.clone(), c.mul(&C::from_int(s.charge))))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
                std::cmp::Ordering::Greater => deriv(&p, n as u32)
                    .into_iter()
                    .map(|(m, c)| (m, c.mul(&C::from_int(two_k * n))))
                    .collect(),
            };
            for (m, c) in r {
                out.add_term(State::new(s.charge, m), c);
            }
            out
        })
    }

    /// Virasoro mode L(n) = (1/4k) Σ_m :α(n−m)α(m):.
    pub fn virasoro(&self, spec: &LatticeSpec, n: i64) -> Self {
        let mut r = FockVec::zero(self.sector);
        let top = self
            .terms
            .keys()
            .map(|s| s.parts.max_part() as i64)
            .max()
            .unwrap_or(0);
        let inv = C::from_ratio(1, 2 * spec.modulus());
        // pairs (i, j) with i + j = n, i ≤ j; the annihilation mode α(j) acts first
        let jmin = n.div_euclid(2) + n.rem_euclid(2);
        for j in jmin..=top.max(0) {
            let i = n - j;
            if j > 0 && j > top {
                continue;
            }
            let mult = if i == j { C::one() } else { C::from_int(2) };
            let t = self.alpha(spec, j).alpha(spec, i);
            r = r.add(&t.scale(&mult.mul(&inv)));
        }
        r
    }

    /// Converts coefficients.
    pub fn map_coef<D: Coef>(&self, f: impl Fn(&C) -> D) -> FockVec<D> {
        let mut r = FockVec::zero(self.sector);
        for (s, c) in &self.terms {
            r.add_term(s.clone(), f(c));
        }
        r
    }
}

impl ExactVector {
    pub fn to_numeric(&self) -> FockVector {
        self.map_coef(|c| Complex64::from_rational(c))
    }
}

/// All basis states of sector j with relative weight at most t.
pub fn basis_states(spec: &LatticeSpec, j: u32, t: u32) -> Vec<State> {
    let mut out = Vec::new();
    for q in spec.charges(j, t) {
        let room = t as i64 - spec.charge_excess(q);
        for p in Partition::up_to(room as u32) {
            out.push(State::new(q, p));
        }
    }
    out.sort();
    out
}

/// ⟨x^μ e^{−q}, x^ν e^{q}⟩ for the invariant bilinear pairing of W^{a′} with W^{a}.
///
/// Heisenberg modes are skew-adjoint, ⟨α(n)w′, w⟩ = −⟨w′, α(−n)w⟩, and the
/// exponentials pair to (−1)^{excess}·ε(−qγ, qγ).
pub fn form_basis(spec: &LatticeSpec, wp: &State, w: &State) -> BigRational {
    if wp.charge != -w.charge || wp.parts != w.parts {
        return <BigRational as Zero>::zero();
    }
    let mut r = BigInt::from(spec.cocycle(-w.charge, w.charge));
    if spec.charge_excess(w.charge) % 2 != 0 {
        r = -r;
    }
    for (j, m) in w.parts.mults() {
        let base = -BigInt::from(spec.modulus() * j as i64);
        for i in 1..=m {
            r *= &base * BigInt::from(i);
        }
    }
    BigRational::from_integer(r)
}

/// Bilinear pairing of two vectors.
pub fn form<C: Coef>(spec: &LatticeSpec, wp: &FockVec<C>, w: &FockVec<C>) -> C {
    let mut acc = C::zero();
    for (s, c) in &w.terms {
        let dual = State::new(-s.charge, s.parts.clone());
        if let Some(d) = wp.terms.get(&dual) {
            let f = C::from_rational(&form_basis(spec, &dual, s));
            acc = acc.add(&f.mul(c).mul(d));
        }
    }
    acc
}
