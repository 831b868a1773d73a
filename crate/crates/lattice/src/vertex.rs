//! Lattice intertwining operators.
//!
//! For u = α(−n₁)⋯α(−n_m)e^{pγ} the operator is the normal-ordered product
//! ε(p,·)·:∂^{(n₁−1)}α(z)⋯∂^{(n_m−1)}α(z) E⁻(z) e^{pγ} z^{pγ(0)} E⁺(z):, with
//! creation modes to the left and α(0) and annihilation modes to the right.
//! Every component of 𝒴(u, z)v is homogeneous, so the operator is computed at
//! z = 1 and the power of z is recovered from the weights.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::fock::{
    deriv, mul_exp, mul_var, poly_add, shift_all, Coef, ExactVector, FockVec, FockVector, Poly,
    State,
};
use crate::spec::LatticeSpec;

/// binom(n, k) for integer n of either sign.
pub(crate) fn gbinom(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// The annihilation half Σ_{m≥0} (−1)^{n−1}·binom(m+n−1, n−1)·α(m) of ∂^{(n−1)}α(1).
fn annihilate<C: Coef>(spec: &LatticeSpec, p: &Poly<C>, n: u32, charge: i64) -> Poly<C> {
    let sign: i64 = if n % 2 == 1 { 1 } else { -1 };
    let mut out = Poly::new();
    for (m, c) in p {
        poly_add(&mut out, m.clone(), c.mul(&C::from_int(sign * charge)));
    }
    let top = p.keys().map(|m| m.max_part()).max().unwrap_or(0);
    for mode in 1..=top {
        let d = deriv(p, mode);
        if d.is_empty() {
            continue;
        }
        let b = gbinom(mode as i64 + n as i64 - 1, n - 1)
            * BigInt::from(sign * spec.modulus() * mode as i64);
        let k = C::from_rational(&BigRational::from_integer(b));
        for (m, c) in d {
            poly_add(&mut out, m, c.mul(&k));
        }
    }
    out
}

/// The creation half Σ_{j≥n} binom(j−1, n−1)·α(−j) of ∂^{(n−1)}α(1).
fn create<C: Coef>(p: &Poly<C>, n: u32, max_level: i64) -> Poly<C> {
    let mut out = Poly::new();
    let mut j = n;
    while j as i64 <= max_level {
        let k = C::from_rational(&BigRational::from_integer(gbinom(j as i64 - 1, n - 1)));
        for (m, c) in mul_var(p, j, max_level) {
            poly_add(&mut out, m, c.mul(&k));
        }
        j += 1;
    }
    out
}

/// 𝒴(u, 1)v for basis states, keeping output states of relative weight at
/// most `t_out`. Returns the output charge and the polynomial part.
pub fn basis_apply<C: Coef>(
    spec: &LatticeSpec,
    u: &State,
    v: &State,
    t_out: i64,
) -> (i64, Poly<C>) {
    let (p, q) = (u.charge, v.charge);
    let out_charge = p + q;
    let max_level = t_out - spec.charge_excess(out_charge);
    let mut result: Poly<C> = Poly::new();
    if max_level < 0 {
        return (out_charge, result);
    }
    let mults: Vec<(u32, u32)> = u.parts.mults().collect();
    let e_minus = C::from_ratio(p, spec.modulus());
    let shift = C::from_int(-p);
    let mut split = vec![0u32; mults.len()];
    loop {
        // split[i] copies of the i-th part act through their annihilation half
        let mut weight = BigInt::one();
        let mut poly: Poly<C> = Poly::from([(v.parts.clone(), C::one())]);
        for (i, &(n, m)) in mults.iter().enumerate() {
            weight *= gbinom(m as i64, split[i]);
            for _ in 0..split[i] {
                poly = annihilate(spec, &poly, n, q);
            }
        }
        if !poly.is_empty() {
            poly = shift_all(&poly, &shift);
            poly = mul_exp(&poly, &e_minus, max_level);
            for (i, &(n, m)) in mults.iter().enumerate() {
                for _ in split[i]..m {
                    poly = create(&poly, n, max_level);
                }
            }
            let w = C::from_rational(&BigRational::from_integer(
                weight * BigInt::from(spec.cocycle(p, q)),
            ));
            for (mono, c) in poly {
                if mono.level() as i64 <= max_level {
                    poly_add(&mut result, mono, c.mul(&w));
                }
            }
        }
        // next split
        let mut i = 0;
        loop {
            if i == mults.len() {
                return (out_charge, result);
            }
            if split[i] < mults[i].1 {
                split[i] += 1;
                break;
            }
            split[i] = 0;
            i += 1;
        }
    }
}

/// Power of z multiplying the component `out` of 𝒴(u, z)v, from the operator
/// bookkeeping pq/2k + level(out) − level(u) − level(v).
pub fn exponent(spec: &LatticeSpec, u: &State, v: &State, out: &State) -> BigRational {
    spec.pairing(u.charge, v.charge)
        + BigRational::from_integer(
            (out.parts.level() as i64 - u.parts.level() as i64 - v.parts.level() as i64).into(),
        )
}

/// Σ_{components} 𝒴(u, 1)v, exact, truncated at relative weight `t_out`.
pub fn apply_formal<C: Coef>(
    spec: &LatticeSpec,
    u: &FockVec<C>,
    v: &FockVec<C>,
    t_out: i64,
) -> FockVec<C> {
    let sector = spec.sector(u.sector as i64 + v.sector as i64);
    let mut r = FockVec::zero(sector);
    for (ub, cu) in &u.terms {
        for (vb, cv) in &v.terms {
            let k = cu.mul(cv);
            let (charge, poly) = basis_apply::<C>(spec, ub, vb, t_out);
            for (m, c) in poly {
                r.add_term(State::new(charge, m), c.mul(&k));
            }
        }
    }
    r
}

/// Graded components of 𝒴(u, z)v keyed by output weight.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiralOutput {
    pub components: BTreeMap<BigRational, ExactVector>,
    /// Whether components above the truncation were dropped.
    pub truncated: bool,
}

/// 𝒴_{a₁a₂}^{a₃}(u, z)v on the truncated module W^{a₃}; the zero operator when
/// the sectors do not add up to `target`.
pub fn chiral_io_apply(
    spec: &LatticeSpec,
    u: &ExactVector,
    v: &ExactVector,
    target: u32,
) -> ChiralOutput {
    let mut components: BTreeMap<BigRational, ExactVector> = BTreeMap::new();
    if spec.sector(u.sector as i64 + v.sector as i64) != target {
        return ChiralOutput {
            components,
            truncated: false,
        };
    }
    let t = spec.truncation() as i64;
    let full = apply_formal(spec, u, v, t + 1);
    let mut truncated = false;
    for (s, c) in full.terms {
        if s.rel_weight(spec) > t {
            truncated = true;
            continue;
        }
        components
            .entry(s.weight(spec))
            .or_insert_with(|| ExactVector::zero(target))
            .add_term(s, c);
    }
    ChiralOutput {
        components,
        truncated,
    }
}

/// Which chiral half a numeric evaluation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Powers z^r with log z = log|z| + i·arg z, 0 ≤ arg z < 2π.
    Left,
    /// Powers z̄^s = e^{s·conj(log z)}.
    Right,
}

/// log z on the branch 0 ≤ arg z < 2π.
pub fn branch_log(z: Complex64) -> Complex64 {
    let mut a = z.im.atan2(z.re);
    if a < 0.0 {
        a += 2.0 * PI;
    }
    if a >= 2.0 * PI {
        a -= 2.0 * PI;
    }
    Complex64::new(z.norm().ln(), a)
}

/// The power z^r on `side`, for the argument z.
pub fn side_power(z: Complex64, r: f64, side: Side) -> Complex64 {
    let l = branch_log(z);
    let l = match side {
        Side::Left => l,
        Side::Right => l.conj(),
    };
    (l * r).exp()
}

type BasisKey = (State, State, i64);

/// Output states of 𝒴(u, 1)v for basis states, with coefficient and exponent.
type BasisTerms = Rc<Vec<(State, f64, BigRational)>>;

/// Memoized floating-point evaluation of lattice intertwining operators.
#[derive(Debug, Default)]
pub struct VertexCache {
    table: RefCell<HashMap<BasisKey, BasisTerms>>,
}

impl VertexCache {
    pub fn new() -> Self {
        VertexCache::default()
    }

    fn basis(&self, spec: &LatticeSpec, u: &State, v: &State, t_out: i64) -> BasisTerms {
        let key = (u.clone(), v.clone(), t_out);
        if let Some(r) = self.table.borrow().get(&key) {
            return r.clone();
        }
        let (charge, poly) = basis_apply::<f64>(spec, u, v, t_out);
        let terms: Vec<_> = poly
            .into_iter()
            .map(|(m, c)| {
                let s = State::new(charge, m);
                let r = exponent(spec, u, v, &s);
                (s, c, r)
            })
            .collect();
        let r = Rc::new(terms);
        self.table.borrow_mut().insert(key, r.clone());
        r
    }

    /// Components of 𝒴(u, z)v grouped by the power of z, each evaluated at z = 1,
    /// keeping output states of relative weight at most `t_out`.
    pub fn graded(
        &self,
        spec: &LatticeSpec,
        u: &FockVector,
        v: &FockVector,
        t_out: i64,
    ) -> BTreeMap<BigRational, FockVector> {
        let sector = spec.sector(u.sector as i64 + v.sector as i64);
        let mut r: BTreeMap<BigRational, FockVector> = BTreeMap::new();
        for (ub, cu) in &u.terms {
            for (vb, cv) in &v.terms {
                let k = cu * cv;
                for (s, c, e) in self.basis(spec, ub, vb, t_out).iter() {
                    r.entry(e.clone())
                        .or_insert_with(|| FockVector::zero(sector))
                        .add_term(s.clone(), k * c);
                }
            }
        }
        r.retain(|_, v| !v.is_zero());
        r
    }

    /// 𝒴(u, z)v evaluated numerically on `side`, keeping output states of
    /// relative weight at most `t_out`.
    pub fn eval(
        &self,
        spec: &LatticeSpec,
        u: &FockVector,
        v: &FockVector,
        z: Complex64,
        side: Side,
        t_out: i64,
    ) -> FockVector {
        let sector = spec.sector(u.sector as i64 + v.sector as i64);
        let mut r = FockVector::zero(sector);
        if z.norm() == 0.0 {
            return r;
        }
        let mut powers: HashMap<BigRational, Complex64> = HashMap::new();
        for (ub, cu) in &u.terms {
            for (vb, cv) in &v.terms {
                let k = cu * cv;
                for (s, c, e) in self.basis(spec, ub, vb, t_out).iter() {
                    let zp = *powers
                        .entry(e.clone())
                        .or_insert_with(|| side_power(z, e.to_f64().expect("finite"), side));
                    r.add_term(s.clone(), k * zp * c);
                }
            }
        }
        r
    }
}
