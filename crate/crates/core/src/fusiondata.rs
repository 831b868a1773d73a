//! Label sets with dual involution, conformal weights and fusion multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Index of a label in [`FusionData::names`].
pub type Label = usize;

/// A triple (a₁, a₂, a₃) naming the space of intertwining operators 𝒱_{a₁a₂}^{a₃}.
pub type Space = (Label, Label, Label);

/// Structural errors raised while assembling fusion data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("dual list has length {got}, expected {expected}")]
    DualLength { got: usize, expected: usize },
    #[error("weight list has length {got}, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("dual index {0} out of range")]
    DualRange(usize),
    #[error(
        "field order {order} is not divisible by 2·{denominator} required by weight of {label}"
    )]
    FieldOrder {
        order: u32,
        denominator: BigInt,
        label: String,
    },
}

/// The finite label set 𝒜 with unit, duals, weights and fusion rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionData {
    names: Vec<String>,
    unit: Label,
    dual: Vec<Label>,
    weights: Vec<BigRational>,
    fusion: BTreeMap<Space, u32>,
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub labels: Vec<String>,
    pub message: String,
}

/// Result of [`FusionData::validate`]; empty iff every invariant holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FusionData {
    /// Assembles fusion data without checking invariants; see [`validate`](Self::validate).
    pub fn new(
        names: Vec<String>,
        unit: Label,
        dual: Vec<Label>,
        weights: Vec<BigRational>,
        fusion: BTreeMap<Space, u32>,
    ) -> Result<Self, FusionError> {
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(FusionError::DuplicateLabel(a.clone()));
            }
        }
        if dual.len() != n {
            return Err(FusionError::DualLength {
                got: dual.len(),
                expected: n,
            });
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= n) {
            return Err(FusionError::DualRange(d));
        }
        if weights.len() != n {
            return Err(FusionError::WeightLength {
                got: weights.len(),
                expected: n,
            });
        }
        let fusion = fusion.into_iter().filter(|(_, m)| *m > 0).collect();
        Ok(FusionData {
            names,
            unit,
            dual,
            weights,
            fusion,
        })
    }

    /// Fusion data of an abelian group ℤ/n with the given weights; labels are "0".."n−1".
    pub fn cyclic(n: usize, weights: Vec<BigRational>) -> Result<Self, FusionError> {
        let names = (0..n).map(|i| i.to_string()).collect();
        let dual = (0..n).map(|i| (n - i) % n).collect();
        let mut fusion = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                fusion.insert((a, b, (a + b) % n), 1);
            }
        }
        Self::new(names, 0, dual, weights, fusion)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> std::ops::Range<Label> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Label) -> &str {
        &self.names[a]
    }

    pub fn label(&self, name: &str) -> Result<Label, FusionError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| FusionError::UnknownLabel(name.to_string()))
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    pub fn dual(&self, a: Label) -> Label {
        self.dual[a]
    }

    pub fn duals(&self) -> &[Label] {
        &self.dual
    }

    pub fn weight(&self, a: Label) -> &BigRational {
        &self.weights[a]
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// N_{a₁a₂}^{a₃}.
    pub fn n(&self, a1: Label, a2: Label, a3: Label) -> u32 {
        self.fusion.get(&(a1, a2, a3)).copied().unwrap_or(0)
    }

    pub fn mult(&self, s: Space) -> usize {
        self.n(s.0, s.1, s.2) as usize
    }

    /// The raw sparse fusion table.
    pub fn fusion_table(&self) -> &BTreeMap<Space, u32> {
        &self.fusion
    }

    /// Dual triple (a₁′, a₂′, a₃′).
    pub fn dual_space(&self, s: Space) -> Space {
        (self.dual[s.0], self.dual[s.1], self.dual[s.2])
    }

    /// Image space of σ₁₂: 𝒱_{a₁a₂}^{a₃} → 𝒱_{a₂a₁}^{a₃}.
    pub fn s12_space(&self, s: Space) -> Space {
        (s.1, s.0, s.2)
    }

    /// Image space of σ₂₃: 𝒱_{a₁a₂}^{a₃} → 𝒱_{a₁a₃′}^{a₂′}.
    pub fn s23_space(&self, s: Space) -> Space {
        (s.0, self.dual[s.2], self.dual[s.1])
    }

    /// Every (a₁, a₂, a₃) with N_{a₁a₂}^{a₃} > 0 and its multiplicity, in label order.
    pub fn nonzero_spaces(&self) -> Vec<(Space, u32)> {
        self.fusion.iter().map(|(&s, &m)| (s, m)).collect()
    }

    /// Lists every violated invariant with the offending labels.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let e = self.unit;
        let nm = |a: Label| self.names[a].clone();
        let mut push = |inv: &'static str, labels: Vec<String>, message: String| {
            v.push(Violation {
                invariant: inv,
                labels,
                message,
            })
        };
        if e >= self.rank() {
            push("unit", vec![], format!("unit index {e} out of range"));
            return ValidationReport { violations: v };
        }
        if self.dual[e] != e {
            push(
                "unit-self-dual",
                vec![nm(e)],
                format!("dual of unit {} is {}", nm(e), nm(self.dual[e])),
            );
        }
        if !self.weights[e].is_zero() {
            push(
                "unit-weight",
                vec![nm(e)],
                format!("h_e = {} ≠ 0", self.weights[e]),
            );
        }
        for a in self.labels() {
            if self.dual[self.dual[a]] != a {
                push(
                    "dual-involution",
                    vec![nm(a)],
                    format!("dual is not an involution at {}", nm(a)),
                );
            }
            if self.weights[self.dual[a]] != self.weights[a] {
                push(
                    "dual-weight",
                    vec![nm(a)],
                    format!(
                        "h of dual of {} differs: {} vs {}",
                        nm(a),
                        self.weights[self.dual[a]],
                        self.weights[a]
                    ),
                );
            }
            for b in self.labels() {
                let d = u32::from(a == b);
                if self.n(e, a, b) != d {
                    push(
                        "unit-left",
                        vec![nm(a), nm(b)],
                        format!("N_(e{})^{} = {}", nm(a), nm(b), self.n(e, a, b)),
                    );
                }
                if self.n(a, e, b) != d {
                    push(
                        "unit-right",
                        vec![nm(a), nm(b)],
                        format!("N_({}e)^{} = {}", nm(a), nm(b), self.n(a, e, b)),
                    );
                }
                let want = u32::from(b == self.dual[a]);
                if self.n(a, b, e) != want {
                    if want == 1 {
                        push(
                            "unit-duality",
                            vec![nm(a)],
                            format!("unit-duality violated at {}", nm(a)),
                        );
                    } else {
                        push(
                            "unit-duality",
                            vec![nm(a), nm(b)],
                            format!(
                                "N_({}{})^e = {} for non-dual pair",
                                nm(a),
                                nm(b),
                                self.n(a, b, e)
                            ),
                        );
                    }
                }
                for c in self.labels() {
                    let m = self.n(a, b, c);
                    let tri = vec![nm(a), nm(b), nm(c)];
                    if self.n(b, a, c) != m {
                        push(
                            "commutativity",
                            tri.clone(),
                            "N_(a1a2)^a3 ≠ N_(a2a1)^a3".into(),
                        );
                    }
                    if self.n(a, self.dual[c], self.dual[b]) != m {
                        push(
                            "sigma23-symmetry",
                            tri.clone(),
                            "N_(a1a2)^a3 ≠ N_(a1a3')^a2'".into(),
                        );
                    }
                    if self.n(self.dual[a], self.dual[b], self.dual[c]) != m {
                        push("prime-symmetry", tri, "N_(a1'a2')^a3' ≠ N_(a1a2)^a3".into());
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// Smallest admissible field-order divisor: 2·lcm of weight denominators.
    pub fn phase_order(&self) -> BigInt {
        let l = self
            .weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        l * 2
    }

    /// Checks that every phase e^{πi h_a} lives in ℚ(ζ_N).
    pub fn check_field_order(&self, order: u32) -> Result<(), FusionError> {
        for a in self.labels() {
            let d = self.weights[a].denom();
            if (BigInt::from(order) % (d * 2u32)) != BigInt::zero() {
                return Err(FusionError::FieldOrder {
                    order,
                    denominator: d.clone(),
                    label: self.names[a].clone(),
                });
            }
        }
        Ok(())
    }
}
