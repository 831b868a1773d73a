//! Fusing matrices, the S₃ action on intertwining-operator spaces, the pairing
//! between 𝒱_{a₁a₂}^{a₃} and 𝒱_{a₁′a₂′}^{a₃′}, dual bases and the chiral
//! identities built from them.
//!
//! F entries are keyed internally by (a₁, a₂, a₃, a₄, a₅, a₆) with multiplicity
//! indices (i, j, l, k), meaning
//! F(𝒴_{a₁a₅;i}^{a₄} ⊗ 𝒴_{a₂a₃;j}^{a₅}; 𝒴_{a₆a₃;l}^{a₄} ⊗ 𝒴_{a₁a₂;k}^{a₆}).
//! Matrices of σ act on columns: σ(𝒴_i) = Σ_m S_{m,i} 𝒴_m.

mod completion;
mod pairing;
mod pentagon;
pub use pentagon::verify_pentagon_tensor;
mod s3;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::exactnum::{CycField, CycMatrix, CycScalar, ExactError};
use crate::fusiondata::{FusionData, Label, Space};

pub use completion::{complete_s3_action, complete_s3_actions, CompletionError, SkewConstraint};
pub use pairing::{ModifiedForm, PairingData, NUMERIC_DIGITS};

/// Six labels (a₁, a₂, a₃, a₄, a₅, a₆) of an F entry in internal order.
pub type FLabels = [Label; 6];

/// Multiplicity indices (i, j, l, k), zero based.
pub type FMults = [usize; 4];

/// Errors that make chiral data unusable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChiralError {
    #[error("F entry {0} is missing")]
    MissingEntry(String),
    #[error("F entry {0} refers to a zero space or an out-of-range multiplicity")]
    UnexpectedEntry(String),
    #[error("sigma{which} matrix for space {space} is missing")]
    MissingSigma { which: u8, space: String },
    #[error("sigma{which} matrix for space {space} has shape {got:?}, expected {expected:?}")]
    SigmaShape {
        which: u8,
        space: String,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("canonical marker for {0} is missing")]
    MissingMarker(String),
    #[error("F_a vanishes or is missing at {0}")]
    BadFa(String),
    #[error("the two pairing formulas disagree on {0}")]
    PairingAsymmetry(String),
    #[error("pairing on {0} is singular")]
    Singular(String),
    #[error("scalar field order {got} differs from bundle order {expected}")]
    FieldOrder { got: u32, expected: u32 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The sparse F tensor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FTensor {
    entries: BTreeMap<(FLabels, FMults), CycScalar>,
}

impl FTensor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, labels: FLabels, mults: FMults, v: CycScalar) {
        self.entries.insert((labels, mults), v);
    }

    pub fn get(&self, labels: FLabels, mults: FMults) -> Option<&CycScalar> {
        self.entries.get(&(labels, mults))
    }

    pub fn get_mut(&mut self, labels: FLabels, mults: FMults) -> Option<&mut CycScalar> {
        self.entries.get_mut(&(labels, mults))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(FLabels, FMults), &CycScalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Converts internal order to the file order [a₁, a₅, a₄, a₂, a₃, a₆].
    pub fn to_file_order(k: FLabels) -> [Label; 6] {
        [k[0], k[4], k[3], k[1], k[2], k[5]]
    }

    /// Converts the file order [a₁, a₅, a₄, a₂, a₃, a₆] to internal order.
    pub fn from_file_order(f: [Label; 6]) -> FLabels {
        [f[0], f[3], f[4], f[2], f[1], f[5]]
    }

    /// The four spaces an F entry connects: (a₁a₅a₄), (a₂a₃a₅), (a₆a₃a₄), (a₁a₂a₆).
    pub fn spaces(k: FLabels) -> [Space; 4] {
        let [a1, a2, a3, a4, a5, a6] = k;
        [(a1, a5, a4), (a2, a3, a5), (a6, a3, a4), (a1, a2, a6)]
    }
}

/// The three kinds of canonical basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonicalKind {
    /// 𝒴_{ea;1}^{a}, the module map.
    LeftUnit,
    /// 𝒴_{ae;1}^{a} = σ₁₂(𝒴_{ea;1}^{a}).
    RightUnit,
    /// 𝒴_{aa′;1}^{e} = σ₂₃(𝒴_{ae;1}^{a}).
    Coevaluation,
}

impl CanonicalKind {
    pub const ALL: [CanonicalKind; 3] = [
        CanonicalKind::LeftUnit,
        CanonicalKind::RightUnit,
        CanonicalKind::Coevaluation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalKind::LeftUnit => "left-unit",
            CanonicalKind::RightUnit => "right-unit",
            CanonicalKind::Coevaluation => "coevaluation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// The space this kind of element should live in for label a.
    pub fn space(self, fusion: &FusionData, a: Label) -> Space {
        let e = fusion.unit();
        match self {
            CanonicalKind::LeftUnit => (e, a, a),
            CanonicalKind::RightUnit => (a, e, a),
            CanonicalKind::Coevaluation => (a, fusion.dual(a), e),
        }
    }
}

/// A declared canonical basis element: space and basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Marker {
    pub space: Space,
    pub index: usize,
}

/// Matrices of σ₁₂ and σ₂₃ on every nonzero space.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct S3Action {
    pub s12: BTreeMap<Space, CycMatrix>,
    pub s23: BTreeMap<Space, CycMatrix>,
}

/// Fusion data together with F, the S₃ action and canonical markers.
#[derive(Debug)]
pub struct ChiralData {
    fusion: FusionData,
    field: Arc<CycField>,
    f: FTensor,
    sigma: S3Action,
    markers: BTreeMap<(CanonicalKind, Label), Marker>,
    pairings: OnceLock<Result<BTreeMap<Space, PairingData>, ChiralError>>,
    roots: OnceLock<Vec<Result<Option<CycScalar>, ChiralError>>>,
}

impl Clone for ChiralData {
    fn clone(&self) -> Self {
        ChiralData {
            fusion: self.fusion.clone(),
            field: self.field.clone(),
            f: self.f.clone(),
            sigma: self.sigma.clone(),
            markers: self.markers.clone(),
            pairings: OnceLock::new(),
            roots: OnceLock::new(),
        }
    }
}

impl PartialEq for ChiralData {
    fn eq(&self, o: &Self) -> bool {
        self.fusion == o.fusion
            && self.field.order() == o.field.order()
            && self.f == o.f
            && self.sigma == o.sigma
            && self.markers == o.markers
    }
}

/// Iterates every admissible F key: all four spaces nonzero.
pub fn admissible_keys(fusion: &FusionData) -> Vec<FLabels> {
    let mut out = Vec::new();
    let l = fusion.rank();
    for a1 in 0..l {
        for a2 in 0..l {
            for a6 in 0..l {
                if fusion.n(a1, a2, a6) == 0 {
                    continue;
                }
                for a3 in 0..l {
                    for a4 in 0..l {
                        if fusion.n(a6, a3, a4) == 0 {
                            continue;
                        }
                        for a5 in 0..l {
                            if fusion.n(a1, a5, a4) > 0 && fusion.n(a2, a3, a5) > 0 {
                                out.push([a1, a2, a3, a4, a5, a6]);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Multiplicity ranges (i, j, l, k) of an F key.
pub fn key_dims(fusion: &FusionData, k: FLabels) -> [usize; 4] {
    let s = FTensor::spaces(k);
    [
        fusion.mult(s[0]),
        fusion.mult(s[1]),
        fusion.mult(s[2]),
        fusion.mult(s[3]),
    ]
}

/// All multiplicity tuples within the given ranges.
pub fn mult_tuples(d: [usize; 4]) -> Vec<FMults> {
    let mut out = Vec::new();
    for i in 0..d[0] {
        for j in 0..d[1] {
            for l in 0..d[2] {
                for k in 0..d[3] {
                    out.push([i, j, l, k]);
                }
            }
        }
    }
    out
}

impl ChiralData {
    /// Assembles and structurally checks chiral data. Missing canonical markers
    /// default to index 0 on the canonical space.
    pub fn new(
        fusion: FusionData,
        field: Arc<CycField>,
        f: FTensor,
        sigma: S3Action,
        markers: BTreeMap<(CanonicalKind, Label), Marker>,
    ) -> Result<Self, ChiralError> {
        let fmt_key = |k: FLabels, m: FMults| {
            let names: Vec<&str> = FTensor::to_file_order(k)
                .iter()
                .map(|&a| fusion.name(a))
                .collect();
            format!("[{}; {:?}]", names.join(","), m.map(|x| x + 1))
        };
        for ((k, m), v) in f.iter() {
            if v.order() != field.order() {
                return Err(ChiralError::FieldOrder {
                    got: v.order(),
                    expected: field.order(),
                });
            }
            let d = key_dims(&fusion, *k);
            if (0..4).any(|t| m[t] >= d[t]) {
                return Err(ChiralError::UnexpectedEntry(fmt_key(*k, *m)));
            }
        }
        for k in admissible_keys(&fusion) {
            for m in mult_tuples(key_dims(&fusion, k)) {
                if f.get(k, m).is_none() {
                    return Err(ChiralError::MissingEntry(fmt_key(k, m)));
                }
            }
        }
        for (s, mult) in fusion.nonzero_spaces() {
            let sname = space_name(&fusion, s);
            for (which, map, tgt) in [
                (12u8, &sigma.s12, fusion.s12_space(s)),
                (23u8, &sigma.s23, fusion.s23_space(s)),
            ] {
                let m = map.get(&s).ok_or_else(|| ChiralError::MissingSigma {
                    which,
                    space: sname.clone(),
                })?;
                let expected = (fusion.mult(tgt), mult as usize);
                if (m.rows(), m.cols()) != expected {
                    return Err(ChiralError::SigmaShape {
                        which,
                        space: sname.clone(),
                        got: (m.rows(), m.cols()),
                        expected,
                    });
                }
                if let Some(x) = m.entries().first() {
                    if x.order() != field.order() {
                        return Err(ChiralError::FieldOrder {
                            got: x.order(),
                            expected: field.order(),
                        });
                    }
                }
            }
        }
        let mut all_markers = markers;
        for a in fusion.labels() {
            for kind in CanonicalKind::ALL {
                all_markers.entry((kind, a)).or_insert(Marker {
                    space: kind.space(&fusion, a),
                    index: 0,
                });
            }
        }
        Ok(ChiralData {
            fusion,
            field,
            f,
            sigma,
            markers: all_markers,
            pairings: OnceLock::new(),
            roots: OnceLock::new(),
        })
    }

    pub fn fusion(&self) -> &FusionData {
        &self.fusion
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn f_tensor(&self) -> &FTensor {
        &self.f
    }

    pub fn sigma(&self) -> &S3Action {
        &self.sigma
    }

    pub fn markers(&self) -> &BTreeMap<(CanonicalKind, Label), Marker> {
        &self.markers
    }

    /// Replaces parts of the data, e.g. for mutation tests; caches are reset.
    pub fn with_parts(
        &self,
        f: FTensor,
        sigma: S3Action,
        markers: BTreeMap<(CanonicalKind, Label), Marker>,
    ) -> Result<Self, ChiralError> {
        ChiralData::new(self.fusion.clone(), self.field.clone(), f, sigma, markers)
    }

    /// Basis index of a canonical element.
    pub fn marker_index(&self, kind: CanonicalKind, a: Label) -> usize {
        self.markers.get(&(kind, a)).map_or(0, |m| m.index)
    }

    /// F entry, zero when absent.
    pub fn fv(&self, k: FLabels, m: FMults) -> CycScalar {
        self.f
            .get(k, m)
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(&self.field))
    }

    pub fn s12(&self, s: Space) -> &CycMatrix {
        &self.sigma.s12[&s]
    }

    pub fn s23(&self, s: Space) -> &CycMatrix {
        &self.sigma.s23[&s]
    }

    /// F_a = F(𝒴_{ae;1}^{a}⊗𝒴_{a′a;1}^{e}; 𝒴_{ea;1}^{a}⊗𝒴_{aa′;1}^{e}).
    pub fn f_a(&self, a: Label) -> Result<CycScalar, ChiralError> {
        let e = self.fusion.unit();
        let ad = self.fusion.dual(a);
        let key = [a, ad, a, a, e, e];
        let m = [
            self.marker_index(CanonicalKind::RightUnit, a),
            self.marker_index(CanonicalKind::Coevaluation, ad),
            self.marker_index(CanonicalKind::LeftUnit, a),
            self.marker_index(CanonicalKind::Coevaluation, a),
        ];
        match self.f.get(key, m) {
            Some(v) if !v.is_zero() => Ok(v.clone()),
            _ => Err(ChiralError::BadFa(self.fusion.name(a).to_string())),
        }
    }

    /// Human-readable space name "(a1,a2,a3)".
    pub fn space_name(&self, s: Space) -> String {
        space_name(&self.fusion, s)
    }

    /// Label names of a space, used as a report index.
    pub fn space_index(&self, s: Space) -> Vec<String> {
        vec![
            self.fusion.name(s.0).to_string(),
            self.fusion.name(s.1).to_string(),
            self.fusion.name(s.2).to_string(),
        ]
    }
}

pub(crate) fn space_name(fusion: &FusionData, s: Space) -> String {
    format!(
        "({},{},{})",
        fusion.name(s.0),
        fusion.name(s.1),
        fusion.name(s.2)
    )
}
