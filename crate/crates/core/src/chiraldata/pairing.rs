//! The pairing ⟨·,·⟩ between 𝒱_{a₁a₂}^{a₃} and 𝒱_{a₁′a₂′}^{a₃′}, dual bases,
//! the fusing δ-identity in dual bases and the √F-modified form.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{CanonicalKind, ChiralData, ChiralError};
use crate::exactnum::{embed, sqrt_in_field, CycMatrix, CycScalar};
use crate::fusiondata::Space;
use crate::report::{CheckRecord, EvalPath, Report};

/// Pairing matrix P (rows: basis of 𝒱_{a₁a₂}^{a₃}, columns: basis of
/// 𝒱_{a₁′a₂′}^{a₃′}), its inverse, and the dual-basis coefficients D with
/// 𝒴′_i = Σ_m D_{m,i} 𝒴_m (primed space basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingData {
    pub pairing: CycMatrix,
    pub inverse: CycMatrix,
    pub dual: CycMatrix,
}

/// The modified form √F_{a₃}/(√F_{a₁}√F_{a₂})·⟨·,·⟩ on one space.
#[derive(Debug, Clone, PartialEq)]
pub enum ModifiedForm {
    /// All square roots lie in the field.
    Exact(CycMatrix),
    /// Some square root does not; entries embedded at 30 digits.
    Numeric(Vec<Vec<Complex64>>),
}

impl ModifiedForm {
    pub fn path(&self) -> EvalPath {
        match self {
            ModifiedForm::Exact(_) => EvalPath::Exact,
            ModifiedForm::Numeric(_) => EvalPath::Numeric,
        }
    }

    /// Complex entries regardless of path.
    pub fn numeric(&self) -> Vec<Vec<Complex64>> {
        match self {
            ModifiedForm::Exact(m) => to_complex(m),
            ModifiedForm::Numeric(v) => v.clone(),
        }
    }
}

/// Embedding precision, in decimal digits, of the numeric path.
pub const NUMERIC_DIGITS: u32 = 30;

pub(crate) fn to_complex(m: &CycMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| embed(m.get(i, j), NUMERIC_DIGITS).to_complex64())
                .collect()
        })
        .collect()
}

impl ChiralData {
    /// First formula: P_{j,i} = Σ_m σ₂₃[x′]_{m,i} F[(a₁′,a₁,a₂,a₂,a₃,e); m, j, 1, 1].
    fn pairing_first(&self, x: Space) -> CycMatrix {
        let fu = &self.fusion;
        let e = fu.unit();
        let (a1, a2, a3) = x;
        let xd = fu.dual_space(x);
        let s = self.s23(xd);
        let lu = self.marker_index(CanonicalKind::LeftUnit, a2);
        let co = self.marker_index(CanonicalKind::Coevaluation, fu.dual(a1));
        let n = fu.mult(x);
        let nd = fu.mult(xd);
        let mut p = CycMatrix::zeros(&self.field, n, nd);
        for j in 0..n {
            for i in 0..nd {
                let mut acc = CycScalar::zero(&self.field);
                for m in 0..s.rows() {
                    let t =
                        s.get(m, i) * &self.fv([fu.dual(a1), a1, a2, a2, a3, e], [m, j, lu, co]);
                    acc = &acc + &t;
                }
                p.set(j, i, acc);
            }
        }
        p
    }

    /// Second formula: Q_{j,i} = Σ_m σ₂₃[x]_{m,j} F[(a₁,a₁′,a₂′,a₂′,a₃′,e); m, i, 1, 1].
    fn pairing_second(&self, x: Space) -> CycMatrix {
        let fu = &self.fusion;
        let e = fu.unit();
        let (a1, _, _) = x;
        let (a1d, a2d, a3d) = fu.dual_space(x);
        let s = self.s23(x);
        let lu = self.marker_index(CanonicalKind::LeftUnit, a2d);
        let co = self.marker_index(CanonicalKind::Coevaluation, a1);
        let n = fu.mult(x);
        let nd = fu.mult((a1d, a2d, a3d));
        let mut q = CycMatrix::zeros(&self.field, n, nd);
        for j in 0..n {
            for i in 0..nd {
                let mut acc = CycScalar::zero(&self.field);
                for m in 0..s.rows() {
                    let t = s.get(m, j) * &self.fv([a1, a1d, a2d, a2d, a3d, e], [m, i, lu, co]);
                    acc = &acc + &t;
                }
                q.set(j, i, acc);
            }
        }
        q
    }

    /// Both inner-fusing formulas for one space.
    pub fn pairing_formulas(&self, x: Space) -> (CycMatrix, CycMatrix) {
        (self.pairing_first(x), self.pairing_second(x))
    }

    /// The pairing matrix; fails if the two formulas disagree.
    pub fn pairing_matrix(&self, x: Space) -> Result<CycMatrix, ChiralError> {
        if self.fusion.mult(x) == 0 {
            return Ok(CycMatrix::zeros(&self.field, 0, 0));
        }
        let (p, q) = self.pairing_formulas(x);
        if p != q {
            return Err(ChiralError::PairingAsymmetry(self.space_name(x)));
        }
        Ok(p)
    }

    /// Pairing data of every nonzero space (cached).
    pub fn pairings(&self) -> Result<&BTreeMap<Space, PairingData>, ChiralError> {
        self.pairings
            .get_or_init(|| {
                let mut out = BTreeMap::new();
                for (x, _) in self.fusion.nonzero_spaces() {
                    let p = self.pairing_matrix(x)?;
                    let inv = p
                        .inverse()
                        .map_err(|_| ChiralError::Singular(self.space_name(x)))?;
                    out.insert(
                        x,
                        PairingData {
                            pairing: p,
                            dual: inv.clone(),
                            inverse: inv,
                        },
                    );
                }
                Ok(out)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Coefficients of the dual basis {𝒴′_{a₁′a₂′;i}^{a₃′}} in the bundle basis of
    /// 𝒱_{a₁′a₂′}^{a₃′}.
    pub fn dual_basis(&self, x: Space) -> Result<CycMatrix, ChiralError> {
        Ok(self
            .pairings()?
            .get(&x)
            .map(|p| p.dual.clone())
            .unwrap_or_else(|| CycMatrix::zeros(&self.field, 0, 0)))
    }

    /// Dual-basis matrices of all nonzero spaces.
    pub fn dual_bases(&self) -> Result<BTreeMap<Space, CycMatrix>, ChiralError> {
        Ok(self
            .pairings()?
            .iter()
            .map(|(x, p)| (*x, p.dual.clone()))
            .collect())
    }

    /// The dual-basis lemma: the duals of 𝒴_{ea;1}^{a}, 𝒴_{ae;1}^{a} and
    /// 𝒴_{aa′;1}^{e} are 𝒴_{ea′;1}^{a′}, 𝒴_{a′e;1}^{a′} and 𝒴_{a′a;1}^{e}/F_a, and
    /// F_{a′} = F_a.
    pub fn verify_dual_basis_lemma(&self) -> Report {
        let fu = &self.fusion;
        let mut rep = Report::new("dual-basis", "dual bases of the canonical elements");
        for a in fu.labels() {
            let ad = fu.dual(a);
            let idx = vec![fu.name(a).to_string()];
            let (fa, fad) = match (self.f_a(a), self.f_a(ad)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(err), _) | (_, Err(err)) => {
                    rep.push(CheckRecord::exact("f-dual", idx, false).with_detail(err.to_string()));
                    continue;
                }
            };
            rep.push(CheckRecord::exact("f-dual", idx.clone(), fa == fad));
            let one = CycScalar::one(&self.field);
            let inv = match fa.inverse() {
                Ok(v) => v,
                Err(err) => {
                    rep.push(
                        CheckRecord::exact("dual-coevaluation", idx, false)
                            .with_detail(err.to_string()),
                    );
                    continue;
                }
            };
            for (name, kind, scale) in [
                ("dual-left-unit", CanonicalKind::LeftUnit, one.clone()),
                ("dual-right-unit", CanonicalKind::RightUnit, one),
                ("dual-coevaluation", CanonicalKind::Coevaluation, inv),
            ] {
                let x = kind.space(fu, a);
                let (i, j) = (self.marker_index(kind, a), self.marker_index(kind, ad));
                let ok = match self.dual_basis(x) {
                    Ok(d) => (0..d.rows()).all(|r| {
                        let want = if r == j {
                            scale.clone()
                        } else {
                            CycScalar::zero(&self.field)
                        };
                        i < d.cols() && *d.get(r, i) == want
                    }),
                    Err(_) => false,
                };
                rep.push(CheckRecord::exact(name, idx.clone(), ok));
            }
        }
        rep
    }

    /// Nondegeneracy: invertible pairings, dimension symmetry, agreement of the
    /// two pairing formulas, pairing symmetry and the left-inverse formula.
    pub fn verify_nondegeneracy(&self) -> Report {
        let fu = &self.fusion;
        let mut rep = Report::new(
            "pairing",
            "nondegeneracy of the pairing and the left-inverse formula",
        );
        for (x, _) in fu.nonzero_spaces() {
            let idx = self.space_index(x);
            let xd = fu.dual_space(x);
            rep.push(CheckRecord::exact(
                "dimension-symmetry",
                idx.clone(),
                fu.mult(xd) == fu.mult(x),
            ));
            if fu.mult(xd) != fu.mult(x) {
                continue;
            }
            let (p, q) = self.pairing_formulas(x);
            rep.push(CheckRecord::exact(
                "inner-fusing-agreement",
                idx.clone(),
                p == q,
            ));
            let pd = self.pairing_first(xd);
            rep.push(CheckRecord::exact(
                "pairing-symmetry",
                idx.clone(),
                p == pd.transpose(),
            ));
            let inv = p.inverse().is_ok();
            rep.push(CheckRecord::exact("invertible", idx.clone(), inv));
            rep.push(self.formula1_at(x));
        }
        rep
    }

    /// Σ_k F[(a₂,a₃′,a₃,a₂,e,a₁′); 1,1,k,j]·Σ_r C_{r,i} F[(a₁′,a₁,a₂,a₂,a₃,e); k,r,1,1] = δ_ij F_{a₂},
    /// with C the matrix of σ₁₂∘σ₂₃ from 𝒱_{a₂a₃′}^{a₁′} to 𝒱_{a₁a₂}^{a₃}.
    fn formula1_at(&self, x: Space) -> CheckRecord {
        let fu = &self.fusion;
        let e = fu.unit();
        let (a1, a2, a3) = x;
        let (a1d, _, a3d) = fu.dual_space(x);
        let idx = self.space_index(x);
        let fa2 = match self.f_a(a2) {
            Ok(v) => v,
            Err(err) => {
                return CheckRecord::exact("formula1", idx, false).with_detail(err.to_string())
            }
        };
        let src = (a2, a3d, a1d);
        let mid = fu.s23_space(src);
        let c = self.s12(mid).mul(self.s23(src));
        let nk = fu.mult((a1d, a3, a2));
        let nj = fu.mult(src);
        let ru = self.marker_index(CanonicalKind::RightUnit, a2);
        let co3 = self.marker_index(CanonicalKind::Coevaluation, a3d);
        let lu = self.marker_index(CanonicalKind::LeftUnit, a2);
        let co1 = self.marker_index(CanonicalKind::Coevaluation, a1d);
        let mut a = CycMatrix::zeros(&self.field, nk, nj);
        let mut b = CycMatrix::zeros(&self.field, nk, nj);
        for k in 0..nk {
            for j in 0..nj {
                a.set(k, j, self.fv([a2, a3d, a3, a2, e, a1d], [ru, co3, k, j]));
                let mut acc = CycScalar::zero(&self.field);
                for r in 0..fu.mult(x) {
                    let t = c.get(r, j) * &self.fv([a1d, a1, a2, a2, a3, e], [k, r, lu, co1]);
                    acc = &acc + &t;
                }
                b.set(k, j, acc);
            }
        }
        let lhs = a.transpose().mul(&b);
        let want = CycMatrix::identity(&self.field, nj).scale(&fa2);
        let ok = lhs == want;
        let rec = CheckRecord::exact("formula1", idx, ok);
        if ok {
            rec
        } else {
            rec.with_detail(format!("lhs={lhs:?} F_a2={fa2}"))
        }
    }

    /// The fusing δ-identity using the bundle's own dual bases.
    pub fn verify_prop_fusing(&self) -> Report {
        match self.dual_bases() {
            Ok(d) => self.verify_prop_fusing_with(&d),
            Err(err) => {
                let mut rep = Report::new("fusing", FUSING_HEADER);
                rep.push(
                    CheckRecord::exact("dual-bases", vec![], false).with_detail(err.to_string()),
                );
                rep
            }
        }
    }

    /// The fusing δ-identity with caller-supplied dual-basis coefficients:
    /// Σ_{a₅,p,q} F(…;m,k)[a₆]·F′(…;n,l)[a₇] = δ_{a₆a₇}δ_{mn}δ_{kl}, where F′ is F at
    /// primed labels transformed to dual bases on all four slots.
    pub fn verify_prop_fusing_with(&self, duals: &BTreeMap<Space, CycMatrix>) -> Report {
        let fu = &self.fusion;
        let mut rep = Report::new("fusing", FUSING_HEADER);
        let mut pair = BTreeMap::new();
        for (x, d) in duals {
            match d.inverse() {
                Ok(p) => {
                    pair.insert(*x, p);
                }
                Err(_) => rep.push(
                    CheckRecord::exact("dual-invertible", self.space_index(*x), false)
                        .with_detail("dual-basis matrix is singular"),
                ),
            }
        }
        if !rep.passed() {
            return rep;
        }
        let l = fu.rank();
        let zero = CycScalar::zero(&self.field);
        let mut fprime_cache: BTreeMap<([usize; 6], [usize; 4]), CycScalar> = BTreeMap::new();
        for a1 in 0..l {
            for a2 in 0..l {
                for a3 in 0..l {
                    for a4 in 0..l {
                        for a6 in (0..l).filter(|&y| fu.n(y, a3, a4) > 0 && fu.n(a1, a2, y) > 0) {
                            for a7 in (0..l).filter(|&y| fu.n(y, a3, a4) > 0 && fu.n(a1, a2, y) > 0)
                            {
                                let dm = fu.mult((a6, a3, a4));
                                let dk = fu.mult((a1, a2, a6));
                                let dn = fu.mult((a7, a3, a4));
                                let dl = fu.mult((a1, a2, a7));
                                for m in 0..dm {
                                    for k in 0..dk {
                                        for n in 0..dn {
                                            for lx in 0..dl {
                                                let mut acc = zero.clone();
                                                for a5 in (0..l).filter(|&y| {
                                                    fu.n(a1, y, a4) > 0 && fu.n(a2, a3, y) > 0
                                                }) {
                                                    for p in 0..fu.mult((a1, a5, a4)) {
                                                        for q in 0..fu.mult((a2, a3, a5)) {
                                                            let fv = self.fv(
                                                                [a1, a2, a3, a4, a5, a6],
                                                                [p, q, m, k],
                                                            );
                                                            if fv.is_zero() {
                                                                continue;
                                                            }
                                                            let key = (
                                                                [a1, a2, a3, a4, a5, a7],
                                                                [p, q, n, lx],
                                                            );
                                                            let fp = fprime_cache
                                                                .entry(key)
                                                                .or_insert_with(|| {
                                                                    self.f_prime(
                                                                        key.0, key.1, duals, &pair,
                                                                    )
                                                                })
                                                                .clone();
                                                            acc = &acc + &(&fv * &fp);
                                                        }
                                                    }
                                                }
                                                let want = a6 == a7 && m == n && k == lx;
                                                let ok =
                                                    if want { acc.is_one() } else { acc.is_zero() };
                                                let mut idx: Vec<String> = [a1, a2, a3, a4, a6, a7]
                                                    .iter()
                                                    .map(|&x| fu.name(x).to_string())
                                                    .collect();
                                                idx.extend(
                                                    [m, k, n, lx]
                                                        .iter()
                                                        .map(|x| (x + 1).to_string()),
                                                );
                                                let mut rec =
                                                    CheckRecord::exact("fusing-delta", idx, ok);
                                                if !ok {
                                                    rec = rec.with_detail(format!("sum={acc}"));
                                                }
                                                rep.push(rec);
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
        rep
    }

    /// F in dual bases: Σ D₁_{p₀p} D₂_{q₀q} F[primed](p₀,q₀;m₀,m₀′) P₃_{n,m₀} P₄_{l,m₀′}.
    fn f_prime(
        &self,
        k: [usize; 6],
        mults: [usize; 4],
        duals: &BTreeMap<Space, CycMatrix>,
        pair: &BTreeMap<Space, CycMatrix>,
    ) -> CycScalar {
        let fu = &self.fusion;
        let [a1, a2, a3, a4, a5, a7] = k;
        let [p, q, n, l] = mults;
        let d1 = &duals[&(a1, a5, a4)];
        let d2 = &duals[&(a2, a3, a5)];
        let p3 = &pair[&(a7, a3, a4)];
        let p4 = &pair[&(a1, a2, a7)];
        let kd = [a1, a2, a3, a4, a5, a7].map(|x| fu.dual(x));
        let mut acc = CycScalar::zero(&self.field);
        for p0 in 0..d1.rows() {
            let c1 = d1.get(p0, p);
            if c1.is_zero() {
                continue;
            }
            for q0 in 0..d2.rows() {
                let c2 = d2.get(q0, q);
                if c2.is_zero() {
                    continue;
                }
                let c12 = c1 * c2;
                for m0 in 0..p3.cols() {
                    let c3 = p3.get(n, m0);
                    if c3.is_zero() {
                        continue;
                    }
                    for m1 in 0..p4.cols() {
                        let c4 = p4.get(l, m1);
                        if c4.is_zero() {
                            continue;
                        }
                        let fv = self.fv(kd, [p0, q0, m0, m1]);
                        acc = &acc + &(&(&c12 * &fv) * &(c3 * c4));
                    }
                }
            }
        }
        acc
    }

    /// √F_a when it lies in the field (cached per label).
    pub fn sqrt_f_a(&self, a: usize) -> Result<Option<CycScalar>, ChiralError> {
        self.roots.get_or_init(|| {
            self.fusion
                .labels()
                .map(|b| Ok(sqrt_in_field(&self.f_a(b)?)))
                .collect()
        })[a]
            .clone()
    }

    /// Numeric principal √F_a at 30 digits.
    pub fn sqrt_f_a_numeric(&self, a: usize) -> Result<Complex64, ChiralError> {
        Ok(embed(&self.f_a(a)?, NUMERIC_DIGITS).sqrt().to_complex64())
    }

    /// √F_{a₃}/(√F_{a₁}√F_{a₂})·⟨·,·⟩ on 𝒱_{a₁a₂}^{a₃}.
    pub fn modified_form(&self, x: Space) -> Result<ModifiedForm, ChiralError> {
        let p = self.pairings()?[&x].pairing.clone();
        self.modified_from(x, &p)
    }

    /// The modified-form factor applied to an arbitrary matrix on space x.
    pub(crate) fn modified_from(
        &self,
        x: Space,
        p: &CycMatrix,
    ) -> Result<ModifiedForm, ChiralError> {
        let (a1, a2, a3) = x;
        let roots = [self.sqrt_f_a(a1)?, self.sqrt_f_a(a2)?, self.sqrt_f_a(a3)?];
        if let [Some(r1), Some(r2), Some(r3)] = &roots {
            let c = &r3.clone().try_div(&(r1 * r2))?;
            return Ok(ModifiedForm::Exact(p.scale(c)));
        }
        let c = self.sqrt_f_a_numeric(a3)?
            / (self.sqrt_f_a_numeric(a1)? * self.sqrt_f_a_numeric(a2)?);
        Ok(ModifiedForm::Numeric(
            to_complex(p)
                .into_iter()
                .map(|r| r.into_iter().map(|v| v * c).collect())
                .collect(),
        ))
    }
}

pub(crate) const FUSING_HEADER: &str = "fusing δ-identity Σ F·F′ = δδδ in dual bases";
