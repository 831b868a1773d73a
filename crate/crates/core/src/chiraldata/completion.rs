//! Completion of the S₃ action from F for multiplicity-free data.
//!
//! σ₂₃ is expressed through σ₁₂ by the left-inverse formula, and σ₁₂ is then
//! determined by monomial constraints: canonical normalization, involutions,
//! agreement of the two pairing formulas, the pairing values on canonical
//! spaces and S₃-invariance of the pairing. Constraints are propagated and the
//! remaining freedom is searched over roots of unity of the field.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use super::{CanonicalKind, ChiralData, ChiralError, FTensor, Marker, S3Action};
use crate::exactnum::{CycField, CycMatrix, CycScalar};
use crate::fusiondata::{FusionData, Label, Space};

/// Failures of [`complete_s3_action`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("S3 completion needs multiplicity-free fusion rules; {0} has multiplicity > 1")]
    NotMultiplicityFree(String),
    #[error("F entry needed for completion vanishes: {0}")]
    Degenerate(String),
    #[error("no S3 action is compatible with the given F")]
    NoSolution,
    #[error(transparent)]
    Chiral(#[from] ChiralError),
}

/// Extra requirement on σ₁₂: the product σ₁₂[x]·σ₁₂[x′] must equal a given scalar.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkewConstraint {
    pub products: BTreeMap<Space, CycScalar>,
}

/// Monomial Π v^e times a constant.
#[derive(Clone)]
struct Mono {
    vars: BTreeMap<usize, i32>,
    k: CycScalar,
}

impl Mono {
    fn var(v: usize, field: &Arc<CycField>) -> Self {
        Mono {
            vars: BTreeMap::from([(v, 1)]),
            k: CycScalar::one(field),
        }
    }

    fn konst(k: CycScalar) -> Self {
        Mono {
            vars: BTreeMap::new(),
            k,
        }
    }

    fn times(&self, o: &Mono) -> Mono {
        let mut vars = self.vars.clone();
        for (v, e) in &o.vars {
            *vars.entry(*v).or_insert(0) += e;
        }
        vars.retain(|_, e| *e != 0);
        Mono {
            vars,
            k: &self.k * &o.k,
        }
    }

    fn scaled(&self, c: &CycScalar) -> Mono {
        Mono {
            vars: self.vars.clone(),
            k: &self.k * c,
        }
    }
}

/// Π v^e = k.
struct Constraint {
    vars: Vec<(usize, i32)>,
    k: CycScalar,
}

struct System<'a> {
    fusion: &'a FusionData,
    field: &'a Arc<CycField>,
    f: &'a FTensor,
    spaces: Vec<Space>,
    index: BTreeMap<Space, usize>,
}

impl<'a> System<'a> {
    fn fv(&self, k: [Label; 6]) -> Result<CycScalar, CompletionError> {
        match self.f.get(k, [0; 4]) {
            Some(v) if !v.is_zero() => Ok(v.clone()),
            _ => {
                let names: Vec<&str> = k.iter().map(|&a| self.fusion.name(a)).collect();
                Err(CompletionError::Degenerate(names.join(",")))
            }
        }
    }

    fn f_a(&self, a: Label) -> Result<CycScalar, CompletionError> {
        let e = self.fusion.unit();
        self.fv([a, self.fusion.dual(a), a, a, e, e])
    }

    fn d(&self, a: Label) -> Label {
        self.fusion.dual(a)
    }

    fn s12_img(&self, x: Space) -> Space {
        self.fusion.s12_space(x)
    }

    fn s23_img(&self, x: Space) -> Space {
        self.fusion.s23_space(x)
    }

    /// c(y) with σ₂₃[y] = c(y)·σ₁₂[σ₁₂σ₂₃ y].
    fn c(&self, y: Space) -> Result<CycScalar, CompletionError> {
        let e = self.fusion.unit();
        let (y1, y2, y3) = y;
        let den = &self.fv([y1, y2, self.d(y2), y1, e, y3])?
            * &self.fv([y3, self.d(y3), y1, y1, self.d(y2), e])?;
        Ok(self.f_a(y1)?.try_div(&den).map_err(ChiralError::from)?)
    }

    fn s12(&self, x: Space) -> Mono {
        Mono::var(self.index[&x], self.field)
    }

    fn s23(&self, x: Space) -> Result<Mono, CompletionError> {
        Ok(self.s12(self.s12_img(self.s23_img(x))).scaled(&self.c(x)?))
    }

    /// Pairing on 𝒱_{a₁a₂}^{a₃} by the first formula.
    fn pairing(&self, x: Space) -> Result<Mono, CompletionError> {
        let e = self.fusion.unit();
        let (a, b, c) = x;
        let xd = self.fusion.dual_space(x);
        Ok(self.s23(xd)?.scaled(&self.fv([self.d(a), a, b, b, c, e])?))
    }

    fn constraints(
        &self,
        skew: Option<&SkewConstraint>,
    ) -> Result<Vec<Constraint>, CompletionError> {
        let mut out = Vec::new();
        let one = CycScalar::one(self.field);
        let mut eq = |lhs: Mono, rhs: Mono| -> Result<(), CompletionError> {
            let rinv = Mono {
                vars: rhs.vars.iter().map(|(v, e)| (*v, -e)).collect(),
                k: rhs.k.inverse().map_err(ChiralError::from)?,
            };
            let m = lhs.times(&rinv);
            out.push(Constraint {
                vars: m.vars.into_iter().collect(),
                k: m.k.inverse().map_err(ChiralError::from)?,
            });
            Ok(())
        };
        let e = self.fusion.unit();
        for a in self.fusion.labels() {
            let ad = self.d(a);
            eq(self.s12((e, a, a)), Mono::konst(one.clone()))?;
            eq(self.s12((a, ad, e)), Mono::konst(one.clone()))?;
            eq(self.pairing((e, a, a))?, Mono::konst(one.clone()))?;
            eq(self.pairing((a, e, a))?, Mono::konst(one.clone()))?;
            eq(self.pairing((a, ad, e))?, Mono::konst(self.f_a(a)?))?;
        }
        for &x in &self.spaces {
            let (a, b, c) = x;
            let xd = self.fusion.dual_space(x);
            let y = self.s23_img(x);
            eq(
                self.s12(x).times(&self.s12(self.s12_img(x))),
                Mono::konst(one.clone()),
            )?;
            eq(self.s23(x)?.times(&self.s23(y)?), Mono::konst(one.clone()))?;
            let second = self.s23(x)?.scaled(&self.fv([
                a,
                self.d(a),
                self.d(b),
                self.d(b),
                self.d(c),
                e,
            ])?);
            eq(self.pairing(x)?, second)?;
            eq(
                self.pairing(self.s12_img(x))?
                    .times(&self.s12(x))
                    .times(&self.s12(xd)),
                self.pairing(x)?,
            )?;
            let ratio = self
                .f_a(c)?
                .try_div(&self.f_a(b)?)
                .map_err(ChiralError::from)?;
            eq(
                self.pairing(y)?.times(&self.s23(x)?).times(&self.s23(xd)?),
                self.pairing(x)?.scaled(&ratio),
            )?;
            if let Some(p) = skew.and_then(|s| s.products.get(&x)) {
                eq(self.s12(x).times(&self.s12(xd)), Mono::konst(p.clone()))?;
            }
        }
        Ok(out)
    }
}

/// Applies every constraint with a single unknown of exponent ±1 until nothing
/// changes; `None` on contradiction.
fn propagate(
    cons: &[Constraint],
    mut sol: Vec<Option<CycScalar>>,
) -> Option<Vec<Option<CycScalar>>> {
    loop {
        let mut changed = false;
        for c in cons {
            let mut k = c.k.clone();
            let mut unknown = Vec::new();
            for &(v, e) in &c.vars {
                match &sol[v] {
                    Some(s) => k = k.try_div(&s.pow(e as i64).ok()?).ok()?,
                    None => unknown.push((v, e)),
                }
            }
            match unknown.as_slice() {
                [] => {
                    if !k.is_one() {
                        return None;
                    }
                }
                [(v, e)] if e.abs() == 1 => {
                    sol[*v] = Some(if *e == 1 { k } else { k.inverse().ok()? });
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Some(sol);
        }
    }
}

/// Candidate values for a free σ₁₂ entry: 1, then the other roots of unity.
fn candidates(field: &Arc<CycField>) -> Vec<CycScalar> {
    (0..field.order() as i64)
        .map(|j| CycScalar::zeta_power(field, j))
        .collect()
}

/// Finds σ₁₂ and σ₂₃ for multiplicity-free F such that the resulting chiral
/// data passes the S₃ relations, nondegeneracy and S₃-invariance of the pairing. Returns up to `limit` actions.
pub fn complete_s3_actions(
    fusion: &FusionData,
    field: &Arc<CycField>,
    f: &FTensor,
    skew: Option<&SkewConstraint>,
    limit: usize,
) -> Result<Vec<S3Action>, CompletionError> {
    let spaces: Vec<Space> = fusion
        .nonzero_spaces()
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    if let Some((s, _)) = fusion.nonzero_spaces().into_iter().find(|(_, m)| *m > 1) {
        return Err(CompletionError::NotMultiplicityFree(super::space_name(
            fusion, s,
        )));
    }
    let index = spaces.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let sys = System {
        fusion,
        field,
        f,
        spaces: spaces.clone(),
        index,
    };
    let cons = sys.constraints(skew)?;
    let cands = candidates(field);
    let markers: BTreeMap<(CanonicalKind, Label), Marker> = BTreeMap::new();
    let mut found = Vec::new();
    let mut stack = vec![vec![None; spaces.len()]];
    while let Some(partial) = stack.pop() {
        let Some(sol) = propagate(&cons, partial) else {
            continue;
        };
        match sol.iter().position(Option::is_none) {
            Some(v) => {
                for c in cands.iter().rev() {
                    let mut next = sol.clone();
                    next[v] = Some(c.clone());
                    stack.push(next);
                }
            }
            None => {
                let action = build_action(&sys, &sol)?;
                let data = ChiralData::new(
                    fusion.clone(),
                    field.clone(),
                    f.clone(),
                    action.clone(),
                    markers.clone(),
                )?;
                if data.verify_s3_relations().passed() && data.verify_nondegeneracy().passed() {
                    found.push(action);
                    if found.len() >= limit {
                        break;
                    }
                }
            }
        }
    }
    Ok(found)
}

/// The first S₃ action found by [`complete_s3_actions`].
pub fn complete_s3_action(
    fusion: &FusionData,
    field: &Arc<CycField>,
    f: &FTensor,
    skew: Option<&SkewConstraint>,
) -> Result<S3Action, CompletionError> {
    complete_s3_actions(fusion, field, f, skew, 1)?
        .pop()
        .ok_or(CompletionError::NoSolution)
}

fn build_action(sys: &System<'_>, sol: &[Option<CycScalar>]) -> Result<S3Action, CompletionError> {
    let val = |x: Space| sol[sys.index[&x]].clone().expect("complete solution");
    let mut action = S3Action::default();
    for &x in &sys.spaces {
        action.s12.insert(x, CycMatrix::scalar(val(x)));
        let s23 = &sys.c(x)? * &val(sys.s12_img(sys.s23_img(x)));
        action.s23.insert(x, CycMatrix::scalar(s23));
    }
    Ok(action)
}
