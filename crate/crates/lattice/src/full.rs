//! The full field algebra F = ⊕_a W^a ⊗ W^{a′} of the lattice and its full
//! vertex operator
//! 𝕐(u_L⊗u_R; z, z̄)(v_L⊗v_R) = Σ_x D_x·𝒴_x(u_L, z)v_L ⊗ 𝒴_{x′}(u_R, z̄)v_R,
//! where D_x is the dual-basis scalar of the chiral data on the space x.

use std::collections::BTreeMap;

use num_complex::Complex64;

use fullfield_core::chiraldata::ChiralData;
use fullfield_core::exactnum::{embed_f64, CycScalar};
use fullfield_core::fusiondata::Space;

use crate::derive::emit_chiral_data;
use crate::fock::{ExactVector, FockVector, State};
use crate::series::{monomial, BivariateSeries};
use crate::spec::{LatticeError, LatticeSpec};
use crate::vertex::{Side, VertexCache};

/// Sum of pure tensors v_L ⊗ v_R.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FullVector {
    pub terms: Vec<(FockVector, FockVector)>,
}

impl FullVector {
    pub fn pure(l: FockVector, r: FockVector) -> Self {
        let mut v = FullVector::default();
        v.push(l, r);
        v
    }

    /// 𝟏 ⊗ 𝟏.
    pub fn vacuum() -> Self {
        FullVector::pure(FockVector::vacuum(), FockVector::vacuum())
    }

    pub fn from_exact(l: &ExactVector, r: &ExactVector) -> Self {
        FullVector::pure(l.to_numeric(), r.to_numeric())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, l: FockVector, r: FockVector) {
        if !l.is_zero() && !r.is_zero() {
            self.terms.push((l, r));
        }
    }

    pub fn extend(&mut self, o: FullVector) {
        self.terms.extend(o.terms);
    }

    pub fn scale(&self, c: Complex64) -> Self {
        FullVector {
            terms: self
                .terms
                .iter()
                .map(|(l, r)| (l.scale(&c), r.clone()))
                .collect(),
        }
    }

    /// Coefficient of the basis tensor l ⊗ r.
    pub fn component(&self, l: &State, r: &State) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, b)| a.coefficient(l) * b.coefficient(r))
            .sum()
    }

    pub fn map_left(&self, f: impl Fn(&FockVector) -> FockVector) -> Self {
        let mut out = FullVector::default();
        for (l, r) in &self.terms {
            out.push(f(l), r.clone());
        }
        out
    }

    pub fn map_right(&self, f: impl Fn(&FockVector) -> FockVector) -> Self {
        let mut out = FullVector::default();
        for (l, r) in &self.terms {
            out.push(l.clone(), f(r));
        }
        out
    }

    /// Keeps basis tensors whose two factors have relative weight at most t.
    pub fn truncate(&self, spec: &LatticeSpec, t: i64) -> Self {
        let mut out = FullVector::default();
        for (l, r) in &self.terms {
            out.push(l.truncate(spec, t), r.truncate(spec, t));
        }
        out
    }
}

/// Value of 𝕐(u; z, z̄)v together with the size of the last retained shell.
#[derive(Debug, Clone, PartialEq)]
pub struct FullOutput {
    pub value: FullVector,
    pub error_estimate: f64,
}

fn max_abs(v: &FockVector) -> f64 {
    v.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
}

fn shell(spec: &LatticeSpec, v: &FockVector, t: i64) -> f64 {
    v.terms
        .iter()
        .filter(|(s, _)| s.rel_weight(spec) == t)
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max)
}

/// The lattice full field algebra with its dual-basis prefactors.
#[derive(Debug)]
pub struct FullAlgebra {
    spec: LatticeSpec,
    chiral: ChiralData,
    prefactors: BTreeMap<Space, CycScalar>,
    numeric: BTreeMap<Space, Complex64>,
    cache: VertexCache,
}

impl FullAlgebra {
    /// Builds the algebra on the bundle derived from the lattice itself.
    pub fn new(spec: LatticeSpec) -> Result<Self, LatticeError> {
        let chiral = emit_chiral_data(&spec)?;
        FullAlgebra::with_chiral(spec, chiral)
    }

    /// Builds the algebra with the prefactors of given ℤ/2k chiral data.
    pub fn with_chiral(spec: LatticeSpec, chiral: ChiralData) -> Result<Self, LatticeError> {
        let mut prefactors = BTreeMap::new();
        let mut numeric = BTreeMap::new();
        for (x, _) in chiral.fusion().nonzero_spaces() {
            let d = chiral.dual_basis(x)?.get(0, 0).clone();
            numeric.insert(x, embed_f64(&d));
            prefactors.insert(x, d);
        }
        Ok(FullAlgebra {
            spec,
            chiral,
            prefactors,
            numeric,
            cache: VertexCache::new(),
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn chiral(&self) -> &ChiralData {
        &self.chiral
    }

    /// Exact prefactor D_x.
    pub fn prefactor(&self, x: Space) -> Option<&CycScalar> {
        self.prefactors.get(&x)
    }

    /// Space x of the left factor and its prefactor, or None when the pair of
    /// pure tensors does not lie in F.
    fn space_of(
        &self,
        ul: &FockVector,
        ur: &FockVector,
        vl: &FockVector,
        vr: &FockVector,
    ) -> Option<(Space, Complex64)> {
        let s = &self.spec;
        if ur.sector != s.dual_sector(ul.sector) || vr.sector != s.dual_sector(vl.sector) {
            return None;
        }
        let x = (
            ul.sector as usize,
            vl.sector as usize,
            s.sector(ul.sector as i64 + vl.sector as i64) as usize,
        );
        self.numeric.get(&x).map(|d| (x, *d))
    }

    /// 𝕐(u; z, z̄)v keeping output states of relative weight at most t on each
    /// side. The error estimate is the largest coefficient on the weight-t shell.
    pub fn apply(
        &self,
        u: &FullVector,
        v: &FullVector,
        z: Complex64,
        t: u32,
    ) -> Result<FullOutput, LatticeError> {
        if z.norm() == 0.0 {
            return Err(LatticeError::ZeroArgument);
        }
        let t = t as i64;
        let mut value = FullVector::default();
        let mut err: f64 = 0.0;
        for (ul, ur) in &u.terms {
            for (vl, vr) in &v.terms {
                let Some((_, d)) = self.space_of(ul, ur, vl, vr) else {
                    continue;
                };
                let l = self
                    .cache
                    .eval(&self.spec, ul, vl, z, Side::Left, t)
                    .scale(&d);
                let r = self.cache.eval(&self.spec, ur, vr, z, Side::Right, t);
                err = err
                    .max(shell(&self.spec, &l, t) * max_abs(&r))
                    .max(max_abs(&l) * shell(&self.spec, &r, t));
                value.push(l, r);
            }
        }
        Ok(FullOutput {
            value,
            error_estimate: err,
        })
    }

    /// The formal series 𝕐(u; z, z̄)v = Σ_{r,s} c_{r,s} z^r z̄^s with vector
    /// coefficients, truncated at relative weight t on each side.
    pub fn series(&self, u: &FullVector, v: &FullVector, t: u32) -> BivariateSeries<FullVector> {
        let mut out: BivariateSeries<FullVector> = BivariateSeries::new();
        for (ul, ur) in &u.terms {
            for (vl, vr) in &v.terms {
                let Some((_, d)) = self.space_of(ul, ur, vl, vr) else {
                    continue;
                };
                let left = self.cache.graded(&self.spec, ul, vl, t as i64);
                let right = self.cache.graded(&self.spec, ur, vr, t as i64);
                for (r, l) in &left {
                    for (s, rv) in &right {
                        out.entry((r.clone(), s.clone()))
                            .push(l.scale(&d), rv.clone());
                    }
                }
            }
        }
        out
    }

    /// Evaluates a vector-valued series at z.
    pub fn eval_series(series: &BivariateSeries<FullVector>, z: Complex64) -> FullVector {
        let mut out = FullVector::default();
        for (e, v) in series.iter() {
            out.extend(v.scale(monomial(z, e)));
        }
        out
    }
}
