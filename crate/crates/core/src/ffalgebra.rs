//! The diagonal full field algebra ⊕_a V_a ⊗ V_{a′} built from chiral data.
//!
//! Its vertex operator on the summands (a₁⊗a₁′, a₂⊗a₂′) → a₃⊗a₃′ is
//! Σ_i 𝒴_{a₁a₂;i}^{a₃} ⊗ 𝒴′_{a₁′a₂′;i}^{a₃′}. The structure is stored as a left
//! factor L_x (basis coefficients of 𝒴, the identity) and a right factor R_x
//! (coefficients of the dual basis 𝒴′ in the bundle basis of 𝒱_{a₁′a₂′}^{a₃′}),
//! so that the canonical element is C_x = L_x R_xᵀ.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::chiraldata::{ChiralData, ChiralError};
use crate::exactnum::{phase, CycMatrix, CycScalar};
use crate::fusiondata::{Label, Space};
use crate::report::{CheckRecord, Report};

/// Errors raised while assembling a full field algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfaError {
    #[error(transparent)]
    Chiral(#[from] ChiralError),
    #[error("right factor for space {0} is missing")]
    MissingFactor(String),
    #[error("right factor for space {space} has shape {got:?}, expected {expected:?}")]
    FactorShape {
        space: String,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("weight list has length {got}, expected {expected}")]
    WeightLength { got: usize, expected: usize },
}

/// Structure tensor of the diagonal full field algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct FullFieldAlgebra {
    chiral: ChiralData,
    left_weights: Vec<BigRational>,
    right_weights: Vec<BigRational>,
    right: BTreeMap<Space, CycMatrix>,
}

/// Left and right conformal weights of one summand V_a ⊗ V_{a′}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandWeights {
    pub label: Label,
    pub left: BigRational,
    pub right: BigRational,
    /// left − right; integral iff the summand is single-valued.
    pub spin: BigRational,
}

/// Builds the full field algebra from chiral data: right factors are the dual bases.
pub fn construct(chiral: &ChiralData) -> Result<FullFieldAlgebra, FfaError> {
    let right = chiral.dual_bases()?;
    let w = chiral.fusion().weights().to_vec();
    FullFieldAlgebra::from_parts(chiral.clone(), w.clone(), w, right)
}

impl FullFieldAlgebra {
    /// Assembles stored data. `right_weights[a]` is the weight of the right
    /// chiral factor V_a, so summand a ⊗ a′ has right weight `right_weights[a′]`.
    pub fn from_parts(
        chiral: ChiralData,
        left_weights: Vec<BigRational>,
        right_weights: Vec<BigRational>,
        right: BTreeMap<Space, CycMatrix>,
    ) -> Result<Self, FfaError> {
        let fu = chiral.fusion();
        for w in [&left_weights, &right_weights] {
            if w.len() != fu.rank() {
                return Err(FfaError::WeightLength {
                    got: w.len(),
                    expected: fu.rank(),
                });
            }
        }
        for (x, m) in fu.nonzero_spaces() {
            let r = right
                .get(&x)
                .ok_or_else(|| FfaError::MissingFactor(chiral.space_name(x)))?;
            let expected = (fu.mult(fu.dual_space(x)), m as usize);
            if (r.rows(), r.cols()) != expected {
                return Err(FfaError::FactorShape {
                    space: chiral.space_name(x),
                    got: (r.rows(), r.cols()),
                    expected,
                });
            }
        }
        Ok(FullFieldAlgebra {
            chiral,
            left_weights,
            right_weights,
            right,
        })
    }

    pub fn chiral(&self) -> &ChiralData {
        &self.chiral
    }

    pub fn left_weights(&self) -> &[BigRational] {
        &self.left_weights
    }

    pub fn right_weights(&self) -> &[BigRational] {
        &self.right_weights
    }

    pub fn right_factors(&self) -> &BTreeMap<Space, CycMatrix> {
        &self.right
    }

    /// L_x: identity on the bundle basis of 𝒱_x.
    pub fn left_factor(&self, x: Space) -> CycMatrix {
        CycMatrix::identity(self.chiral.field(), self.chiral.fusion().mult(x))
    }

    /// C_x = L_x R_xᵀ.
    pub fn canonical_element(&self, x: Space) -> CycMatrix {
        self.left_factor(x).mul(&self.right[&x].transpose())
    }

    /// Associativity: the fusing δ-identity with the stored right factors as dual bases.
    pub fn verify_associativity_structure(&self) -> Report {
        let mut rep = self.chiral.verify_prop_fusing_with(&self.right);
        rep.suite = "ffa-assoc".into();
        rep.header = "associativity of the full field algebra vertex operator".into();
        rep
    }

    /// Skew symmetry: e^{−πiΔ}e^{πiΔ̄}·S₁₂[x] C_x S₁₂[x′]ᵀ = C_{σ₁₂x}, where Δ and Δ̄
    /// are h₃−h₁−h₂ on the left and right factors.
    pub fn verify_skew_symmetry_structure(&self) -> Report {
        let ch = &self.chiral;
        let fu = ch.fusion();
        let mut rep = Report::new(
            "skew",
            "skew symmetry of the full field algebra vertex operator",
        );
        for (x, _) in fu.nonzero_spaces() {
            let (a1, a2, a3) = x;
            let xd = fu.dual_space(x);
            let dl = &(&self.left_weights[a3] - &self.left_weights[a1]) - &self.left_weights[a2];
            let dr = &(&self.right_weights[xd.2] - &self.right_weights[xd.0])
                - &self.right_weights[xd.1];
            let idx = ch.space_index(x);
            let ph = match (phase(ch.field(), &-dl), phase(ch.field(), &dr)) {
                (Ok(l), Ok(r)) => &l * &r,
                (Err(err), _) | (_, Err(err)) => {
                    rep.push(CheckRecord::exact("skew", idx, false).with_detail(err.to_string()));
                    continue;
                }
            };
            let lhs = ch
                .s12(x)
                .mul(&self.canonical_element(x))
                .mul(&ch.s12(xd).transpose())
                .scale(&ph);
            let rhs = self.canonical_element(fu.s12_space(x));
            let ok = lhs == rhs;
            let mut rec = CheckRecord::exact("skew", idx, ok);
            if !ok {
                rec = rec.with_detail(format!("lhs={lhs:?} rhs={rhs:?}"));
            }
            rep.push(rec);
        }
        rep
    }

    /// Every summand a ⊗ a′ has integral spin h_a − h̄_{a′}.
    pub fn verify_single_valuedness(&self) -> Report {
        let mut rep = Report::new(
            "single-valuedness",
            "integrality of left minus right weights",
        );
        for w in self.sector_weights() {
            let ok = w.spin.is_integer();
            let mut rec = CheckRecord::exact(
                "integral-spin",
                vec![self.chiral.fusion().name(w.label).into()],
                ok,
            );
            if !ok {
                rec = rec.with_detail(format!("h - hbar = {}", w.spin));
            }
            rep.push(rec);
        }
        rep
    }

    /// Conformal weights of each sector a ⊗ a′.
    pub fn sector_weights(&self) -> Vec<SummandWeights> {
        let fu = self.chiral.fusion();
        fu.labels()
            .map(|a| {
                let left = self.left_weights[a].clone();
                let right = self.right_weights[fu.dual(a)].clone();
                SummandWeights {
                    label: a,
                    spin: &left - &right,
                    left,
                    right,
                }
            })
            .collect()
    }

    /// Sectors (a, a′) in label order.
    pub fn sectors(&self) -> Vec<(Label, Label)> {
        let fu = self.chiral.fusion();
        fu.labels().map(|a| (a, fu.dual(a))).collect()
    }

    /// Weight F_a of the invariant form on sector (a, a′); the form pairs sector
    /// (a, a′) only with (a′, a).
    pub fn bilinear_form_weights(&self) -> Result<BTreeMap<(Label, Label), CycScalar>, FfaError> {
        self.sectors()
            .into_iter()
            .map(|(a, ad)| Ok(((a, ad), self.chiral.f_a(a)?)))
            .collect()
    }

    /// Invariance of the bilinear form: (S₂₃[x]ᵀ R_{σ₂₃x}⁻¹ S₂₃[x′] R_x)·F_{a₂}/F_{a₃} = 1.
    pub fn verify_invariance_structure(&self) -> Report {
        self.invariance_with(false)
    }

    /// The invariance check with the factor F_{a₃}/F_{a₂} in place of F_{a₂}/F_{a₃}.
    /// The two agree only where F_{a₂}² = F_{a₃}²; kept to exhibit the difference.
    pub fn verify_invariance_structure_inverted(&self) -> Report {
        let mut rep = self.invariance_with(true);
        rep.suite = "invariance-inverted".into();
        rep
    }

    fn invariance_with(&self, inverted: bool) -> Report {
        let ch = &self.chiral;
        let fu = ch.fusion();
        let mut rep = Report::new("invariance", "invariance of the bilinear form under σ₂₃");
        for (x, m) in fu.nonzero_spaces() {
            let (_, a2, a3) = x;
            let xd = fu.dual_space(x);
            let idx = ch.space_index(x);
            let y = fu.s23_space(x);
            let res = (|| -> Result<CycMatrix, FfaError> {
                let py = self.right[&y].inverse().map_err(ChiralError::from)?;
                let (f2, f3) = (ch.f_a(a2)?, ch.f_a(a3)?);
                let factor = if inverted {
                    f3.try_div(&f2)
                } else {
                    f2.try_div(&f3)
                }
                .map_err(ChiralError::from)?;
                Ok(ch
                    .s23(x)
                    .transpose()
                    .mul(&py)
                    .mul(ch.s23(xd))
                    .mul(&self.right[&x])
                    .scale(&factor))
            })();
            let rec = match res {
                Ok(lhs) => {
                    let ok = lhs == CycMatrix::identity(ch.field(), m as usize);
                    let r = CheckRecord::exact("invariance", idx, ok);
                    if ok {
                        r
                    } else {
                        r.with_detail(format!("lhs={lhs:?}"))
                    }
                }
                Err(err) => {
                    CheckRecord::exact("invariance", idx, false).with_detail(err.to_string())
                }
            };
            rep.push(rec);
        }
        rep
    }

    /// Applies a basis change g_x on every 𝒱_x; the result describes the same algebra.
    pub fn change_basis(
        &self,
        g: &BTreeMap<Space, CycScalar>,
    ) -> Result<FullFieldAlgebra, FfaError> {
        let ch = &self.chiral;
        let fu = ch.fusion();
        let one = CycScalar::one(ch.field());
        let gx = |x: Space| g.get(&x).cloned().unwrap_or_else(|| one.clone());
        let mut f = crate::chiraldata::FTensor::new();
        for ((k, mm), v) in ch.f_tensor().iter() {
            let s = crate::chiraldata::FTensor::spaces(*k);
            let num = &gx(s[0]) * &gx(s[1]);
            let den = &gx(s[2]) * &gx(s[3]);
            f.insert(
                *k,
                *mm,
                (v * &num).try_div(&den).map_err(ChiralError::from)?,
            );
        }
        let mut sigma = crate::chiraldata::S3Action::default();
        for (x, _) in fu.nonzero_spaces() {
            let s12 = ch.s12(x).scale(
                &gx(x)
                    .try_div(&gx(fu.s12_space(x)))
                    .map_err(ChiralError::from)?,
            );
            let s23 = ch.s23(x).scale(
                &gx(x)
                    .try_div(&gx(fu.s23_space(x)))
                    .map_err(ChiralError::from)?,
            );
            sigma.s12.insert(x, s12);
            sigma.s23.insert(x, s23);
        }
        let chiral = ch.with_parts(f, sigma, ch.markers().clone())?;
        let mut right = BTreeMap::new();
        for (x, r) in &self.right {
            let c = one
                .try_div(&(&gx(*x) * &gx(fu.dual_space(*x))))
                .map_err(ChiralError::from)?;
            right.insert(*x, r.scale(&c));
        }
        FullFieldAlgebra::from_parts(
            chiral,
            self.left_weights.clone(),
            self.right_weights.clone(),
            right,
        )
    }
}
