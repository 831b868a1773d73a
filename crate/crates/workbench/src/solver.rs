//! Exhaustive solver for the pentagon system of a multiplicity-free fusion ring.
//!
//! Entries with the unit among the first three labels are normalized to 1. A
//! maximal set of gauge-independent entries is fixed to 1 and the remaining
//! polynomial system is solved over ℚ(ζ_N) by substitution, exact univariate
//! root finding, linear elimination and zero/nonzero branching.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use fullfield_core::chiraldata::{admissible_keys, verify_pentagon_tensor, FLabels, FTensor};
use fullfield_core::exactnum::{sqrt_in_field, CycField, CycScalar};
use fullfield_core::fusiondata::{FusionData, Space};
use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{Poly, Var};

/// Failures of [`solve_pentagon`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the solver handles multiplicity-free fusion rules only; {0} has multiplicity > 1")]
    NotMultiplicityFree(String),
    #[error("no pentagon solution exists in Q(zeta_{0}); try a larger field order")]
    NoSolution(u32),
}

struct Solver<'a> {
    field: &'a Arc<CycField>,
    unknown: Vec<FLabels>,
    solutions: Vec<BTreeMap<Var, CycScalar>>,
}

/// A pending elimination x = num/den.
#[derive(Clone)]
struct Elim {
    x: Var,
    num: Poly,
    den: Poly,
}

enum Step {
    Branch(Var, Vec<CycScalar>),
    Zero(Vec<Var>),
    Eliminate(Elim),
    Split(Var),
    Stuck,
}

/// All gauge-inequivalent F tensors solving the pentagon equations in ℚ(ζ_N),
/// up to the remaining discrete gauge freedom. Each is re-verified.
pub fn solve_pentagon(
    fusion: &FusionData,
    field: &Arc<CycField>,
) -> Result<Vec<FTensor>, SolveError> {
    if let Some((s, _)) = fusion.nonzero_spaces().into_iter().find(|(_, m)| *m > 1) {
        return Err(SolveError::NotMultiplicityFree(format!(
            "({},{},{})",
            fusion.name(s.0),
            fusion.name(s.1),
            fusion.name(s.2)
        )));
    }
    let e = fusion.unit();
    let keys = admissible_keys(fusion);
    let unknown: Vec<FLabels> = keys
        .iter()
        .copied()
        .filter(|k| !k[..3].contains(&e))
        .collect();
    let index: BTreeMap<FLabels, Var> = unknown.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let one = CycScalar::one(field);
    let term = |k: FLabels| match index.get(&k) {
        Some(&v) => Poly::var(v, field),
        None => Poly::constant(one.clone()),
    };
    let adm = |k: FLabels| {
        let [a1, a2, a3, a4, a5, a6] = k;
        fusion.n(a1, a5, a4) > 0
            && fusion.n(a2, a3, a5) > 0
            && fusion.n(a6, a3, a4) > 0
            && fusion.n(a1, a2, a6) > 0
    };
    let l = fusion.rank();
    let mut polys = Vec::new();
    let mut seen = HashSet::new();
    for a1 in 0..l {
        for a2 in 0..l {
            for a3 in 0..l {
                for a4 in 0..l {
                    for c in (0..l).filter(|&c| fusion.n(a3, a4, c) > 0) {
                        for b in (0..l).filter(|&b| fusion.n(a2, c, b) > 0) {
                            for a5 in (0..l).filter(|&x| fusion.n(a1, b, x) > 0) {
                                for d in (0..l).filter(|&d| fusion.n(a1, a2, d) > 0) {
                                    for f in (0..l).filter(|&f| {
                                        fusion.n(d, a3, f) > 0 && fusion.n(f, a4, a5) > 0
                                    }) {
                                        let mut p = Poly::zero();
                                        let k1 = [a1, a2, c, a5, b, d];
                                        let k2 = [d, a3, a4, a5, c, f];
                                        if adm(k1) && adm(k2) {
                                            p = p.add(&term(k1).mul(&term(k2)));
                                        }
                                        for g in 0..l {
                                            let t = [
                                                [a2, a3, a4, b, c, g],
                                                [a1, g, a4, a5, b, f],
                                                [a1, a2, a3, f, g, d],
                                            ];
                                            if t.iter().all(|&k| adm(k)) {
                                                p = p.sub(
                                                    &term(t[0]).mul(&term(t[1])).mul(&term(t[2])),
                                                );
                                            }
                                        }
                                        if !p.is_zero() && seen.insert(p.clone()) {
                                            polys.push(p);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for a in fusion.labels() {
        let ad = fusion.dual(a);
        if a < ad {
            polys.push(term([a, ad, a, a, e, e]).sub(&term([ad, a, ad, ad, e, e])));
        }
    }
    let mut blocks: BTreeMap<[usize; 5], usize> = BTreeMap::new();
    for k in &unknown {
        *blocks.entry([k[0], k[1], k[2], k[3], k[4]]).or_insert(0) += 1;
    }
    let block = |k: &FLabels| blocks[&[k[0], k[1], k[2], k[3], k[4]]];
    let mut nonzero: BTreeSet<Var> = unknown
        .iter()
        .enumerate()
        .filter(|(_, k)| block(k) == 1)
        .map(|(i, _)| i)
        .collect();
    let mut sol = BTreeMap::new();
    for v in gauge_fixed(fusion, &unknown, &block) {
        sol.insert(index[&unknown[v]], one.clone());
        nonzero.insert(index[&unknown[v]]);
    }
    let mut solver = Solver {
        field,
        unknown: unknown.clone(),
        solutions: Vec::new(),
    };
    solver.dfs(polys, sol, Vec::new(), nonzero);
    let mut out = Vec::new();
    for s in &solver.solutions {
        let mut f = FTensor::new();
        for k in &keys {
            let v = match index.get(k) {
                Some(i) => s[i].clone(),
                None => one.clone(),
            };
            f.insert(*k, [0; 4], v);
        }
        if verify_pentagon_tensor(fusion, field, &f).passed() && !out.contains(&f) {
            out.push(f);
        }
    }
    if out.is_empty() {
        return Err(SolveError::NoSolution(field.order()));
    }
    Ok(out)
}

/// Unknowns whose gauge weights are ℚ-independent, preferring small blocks.
fn gauge_fixed(
    fusion: &FusionData,
    unknown: &[FLabels],
    block: &dyn Fn(&FLabels) -> usize,
) -> Vec<usize> {
    let e = fusion.unit();
    let spaces: Vec<Space> = fusion
        .nonzero_spaces()
        .into_iter()
        .map(|(s, _)| s)
        .filter(|s| s.0 != e && s.1 != e)
        .collect();
    let pivots: Vec<Space> = spaces.iter().copied().filter(|s| s.2 != e).collect();
    let mut order: Vec<usize> = (0..unknown.len()).collect();
    order.sort_by_key(|&i| (block(&unknown[i]), unknown[i]));
    let mut rows: Vec<(usize, Vec<Rational64>)> = Vec::new();
    let mut fixed = Vec::new();
    for i in order {
        let [a1, a2, a3, a4, a5, a6] = unknown[i];
        let mut w: BTreeMap<Space, i64> = BTreeMap::new();
        for (s, sign) in [
            ((a1, a5, a4), 1),
            ((a2, a3, a5), 1),
            ((a6, a3, a4), -1),
            ((a1, a2, a6), -1),
        ] {
            if spaces.contains(&s) {
                *w.entry(s).or_insert(0) += sign;
            }
        }
        let mut v: Vec<Rational64> = pivots
            .iter()
            .map(|s| Rational64::from(w.get(s).copied().unwrap_or(0)))
            .collect();
        for (piv, row) in &rows {
            if !v[*piv].is_zero() {
                let c = v[*piv] / row[*piv];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= c * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            rows.push((p, v));
            fixed.push(i);
        }
    }
    fixed
}

impl Solver<'_> {
    fn dfs(
        &mut self,
        mut polys: Vec<Poly>,
        sol: BTreeMap<Var, CycScalar>,
        elim: Vec<Elim>,
        nonzero: BTreeSet<Var>,
    ) {
        let step = loop {
            let mut next = Vec::new();
            let mut seen = HashSet::new();
            for p in &polys {
                let mut q = p.clone();
                for x in p.vars() {
                    if let Some(v) = sol.get(&x) {
                        q = q.assign(x, v);
                    }
                }
                if q.is_zero() {
                    continue;
                }
                let q = q.strip(&nonzero);
                if q.vars().is_empty() {
                    return;
                }
                if q.len() == 1 && q.vars().iter().all(|v| nonzero.contains(v)) {
                    return;
                }
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
            polys = next;
            if polys.is_empty() {
                break None;
            }
            break Some(self.choose(&polys, &nonzero));
        };
        match step {
            None => self.finish(sol, elim),
            Some(Step::Branch(x, roots)) => {
                for r in roots {
                    if r.is_zero() && nonzero.contains(&x) {
                        continue;
                    }
                    let mut nz = nonzero.clone();
                    if !r.is_zero() {
                        nz.insert(x);
                    }
                    let mut s = sol.clone();
                    s.insert(x, r);
                    self.dfs(polys.clone(), s, elim.clone(), nz);
                }
            }
            Some(Step::Zero(vars)) => {
                for x in vars {
                    let mut s = sol.clone();
                    s.insert(x, CycScalar::zero(self.field));
                    self.dfs(polys.clone(), s, elim.clone(), nonzero.clone());
                }
            }
            Some(Step::Eliminate(el)) => {
                let next = polys
                    .iter()
                    .map(|p| p.substitute(el.x, &el.num, &el.den, self.field))
                    .collect();
                let mut elim = elim;
                elim.push(el);
                self.dfs(next, sol, elim, nonzero);
            }
            Some(Step::Split(x)) => {
                let mut nz = nonzero.clone();
                nz.insert(x);
                self.dfs(polys.clone(), sol.clone(), elim.clone(), nz);
                let mut s = sol;
                s.insert(x, CycScalar::zero(self.field));
                self.dfs(polys, s, elim, nonzero);
            }
            Some(Step::Stuck) => {}
        }
    }

    fn choose(&self, polys: &[Poly], nonzero: &BTreeSet<Var>) -> Step {
        for p in polys {
            let vs = p.vars();
            if vs.len() == 1 {
                let x = *vs.iter().next().expect("one variable");
                if let Some(roots) = self.uniroots(p, x) {
                    return Step::Branch(x, roots);
                }
            }
        }
        for p in polys {
            if p.len() == 1 {
                let maybe: Vec<Var> = p
                    .vars()
                    .into_iter()
                    .filter(|v| !nonzero.contains(v))
                    .collect();
                return Step::Zero(maybe);
            }
        }
        let mut best: Option<(usize, Elim)> = None;
        for p in polys {
            for x in p.vars() {
                if p.degree_in(x) != 1 {
                    continue;
                }
                let (a, b) = p.linear_split(x);
                if a.len() != 1 || !a.vars().iter().all(|v| nonzero.contains(v)) {
                    continue;
                }
                if best.as_ref().is_none_or(|(c, _)| b.len() < *c) {
                    best = Some((
                        b.len(),
                        Elim {
                            x,
                            num: b.neg(),
                            den: a,
                        },
                    ));
                }
            }
        }
        if let Some((_, el)) = best {
            return Step::Eliminate(el);
        }
        match polys
            .iter()
            .flat_map(|p| p.vars())
            .find(|v| !nonzero.contains(v))
        {
            Some(x) => Step::Split(x),
            None => Step::Stuck,
        }
    }

    /// Roots in the field of a univariate polynomial, or `None` when the shape
    /// is not handled.
    fn uniroots(&self, p: &Poly, x: Var) -> Option<Vec<CycScalar>> {
        let co = p.univariate(x)?;
        let zero = CycScalar::zero(self.field);
        let c = |d: u32| co.get(&d).cloned().unwrap_or_else(|| zero.clone());
        let d = *co.keys().next_back()?;
        let lead = c(d);
        if d == 1 {
            return Some(vec![(-&c(0)).try_div(&lead).ok()?]);
        }
        if d == 2 {
            let (a, b, c0) = (lead, c(1), c(0));
            let disc = &(&b * &b) - &(&CycScalar::from_integer(self.field, 4) * &(&a * &c0));
            let two_a = &CycScalar::from_integer(self.field, 2) * &a;
            return Some(match sqrt_in_field(&disc) {
                Some(s) if s.is_zero() => vec![(-&b).try_div(&two_a).ok()?],
                Some(s) => vec![
                    (&s - &b).try_div(&two_a).ok()?,
                    (&(-&s) - &b).try_div(&two_a).ok()?,
                ],
                None => Vec::new(),
            });
        }
        if co.len() == 2 && co.contains_key(&0) {
            let r = (-&c(0)).try_div(&lead).ok()?;
            return self.nth_roots(&r, d);
        }
        None
    }

    /// All x in the field with x^d = r.
    fn nth_roots(&self, r: &CycScalar, d: u32) -> Option<Vec<CycScalar>> {
        let n = self.field.order();
        if let Some(j) = r.root_of_unity_exponent() {
            return Some(
                (0..n)
                    .filter(|t| (t * d) % n == j)
                    .map(|t| CycScalar::zeta_power(self.field, t as i64))
                    .collect(),
            );
        }
        if d.is_power_of_two() {
            let mut cur = vec![r.clone()];
            for _ in 0..d.trailing_zeros() {
                let mut next = Vec::new();
                for v in &cur {
                    if let Some(s) = sqrt_in_field(v) {
                        next.push(-&s);
                        next.push(s);
                    }
                }
                cur = next;
            }
            return Some(cur);
        }
        None
    }

    fn finish(&mut self, mut sol: BTreeMap<Var, CycScalar>, elim: Vec<Elim>) {
        for el in elim.iter().rev() {
            let mut num = el.num.clone();
            let mut den = el.den.clone();
            for (y, v) in &sol {
                num = num.assign(*y, v);
                den = den.assign(*y, v);
            }
            let (Some(n), Some(d)) = (num.as_constant(self.field), den.as_constant(self.field))
            else {
                return;
            };
            let Ok(v) = n.try_div(&d) else {
                return;
            };
            sol.insert(el.x, v);
        }
        if (0..self.unknown.len()).all(|i| sol.contains_key(&i)) {
            self.solutions.push(sol);
        }
    }
}

/// A sign gauge g_x = ±1 on the nonzero spaces carrying the F tensor `a` to
/// `b`, found by elimination over GF(2). Each entry transforms by
/// g over the four spaces of its key; signs make the direction of the
/// transformation irrelevant. `None` when some ratio b/a is not ±1 or the
/// system has no solution.
pub fn sign_gauge_between(
    fusion: &FusionData,
    a: &FTensor,
    b: &FTensor,
) -> Option<BTreeMap<Space, bool>> {
    let spaces: Vec<Space> = fusion
        .nonzero_spaces()
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    let col: BTreeMap<Space, usize> = spaces.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let n = spaces.len();
    let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
    for k in admissible_keys(fusion) {
        let (x, y) = (a.get(k, [0; 4])?, b.get(k, [0; 4])?);
        let sign = if x == y {
            false
        } else if *x == -y {
            true
        } else {
            return None;
        };
        let mut row = vec![false; n];
        for s in FTensor::spaces(k) {
            row[col[&s]] ^= true;
        }
        rows.push((row, sign));
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[c] {
                for j in 0..n {
                    row.0[j] ^= pivot.0[j];
                }
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, s)| *s) {
        return None;
    }
    let mut g: BTreeMap<Space, bool> = spaces.iter().map(|s| (*s, false)).collect();
    for (i, &c) in pivots.iter().enumerate() {
        g.insert(spaces[c], rows[i].1);
    }
    Some(g)
}
