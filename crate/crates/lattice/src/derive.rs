//! Structure constants read off the lattice operators, and the ℤ/2k chiral
//! bundle built from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use fullfield_core::chiraldata::{
    admissible_keys, complete_s3_action, ChiralData, FLabels, FTensor, SkewConstraint,
};
use fullfield_core::exactnum::{field, CycScalar};
use fullfield_core::fusiondata::Space;

use crate::fock::{Partition, State};
use crate::spec::{LatticeError, LatticeSpec};
use crate::vertex::basis_apply;

/// Coefficient of the exponential e^{(p+q)γ} in 𝒴(e^{pγ}, 1)e^{qγ}.
fn leading(spec: &LatticeSpec, p: i64, q: i64) -> BigRational {
    let out = spec.charge_excess(p + q);
    let (_, poly) = basis_apply::<BigRational>(spec, &State::exp(p), &State::exp(q), out);
    poly.get(&Partition::empty())
        .cloned()
        .unwrap_or_else(BigRational::zero)
}

/// Charge lifts (n₁, n₂, n₃) used as independent four-point matrix elements.
const LIFTS: [(i64, i64, i64); 6] = [
    (0, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 0, 0),
    (0, -1, 1),
    (-1, 0, 1),
];

/// The F entry F(𝒴_{a₁a₅}^{a₄}⊗𝒴_{a₂a₃}^{a₅}; 𝒴_{a₆a₃}^{a₄}⊗𝒴_{a₁a₂}^{a₆}) of the
/// lattice operators.
///
/// For exponentials e^{p₁γ}, e^{p₂γ}, e^{p₃γ} the product and the iterate are
/// expansions of the same function c·z₁^{p₁p₃/2k}z₂^{p₂p₃/2k}(z₁−z₂)^{p₁p₂/2k}
/// in two regions, so F is the ratio of their leading coefficients. The ratio
/// is computed for several charge lifts and must agree.
pub fn derive_f_entry(
    spec: &LatticeSpec,
    labels: FLabels,
    t: u32,
) -> Result<CycScalar, LatticeError> {
    let [a1, a2, a3, a4, a5, a6] = labels.map(|a| a as i64);
    let s = |q: i64| spec.sector(q) as i64;
    if s(a2 + a3) != a5
        || s(a1 + a5) != a4
        || s(a1 + a2) != a6
        || labels.iter().any(|&a| a as i64 >= spec.modulus())
    {
        return Err(LatticeError::NotAdmissible(format!("{labels:?}")));
    }
    let n = spec.modulus();
    let mut ratios: Vec<(String, BigRational)> = Vec::new();
    for (n1, n2, n3) in LIFTS {
        let lift = |a: i64, m: i64| spec.lowest_charge(a as u32) + n * m;
        let (p1, p2, p3) = (lift(a1, n1), lift(a2, n2), lift(a3, n3));
        if [p1, p2, p3, p1 + p2, p2 + p3, p1 + p2 + p3]
            .iter()
            .any(|&q| spec.charge_excess(q) > t as i64)
        {
            continue;
        }
        let product = leading(spec, p1, p2 + p3) * leading(spec, p2, p3);
        let iterate = leading(spec, p1, p2) * leading(spec, p1 + p2, p3);
        ratios.push((format!("({p1},{p2},{p3})"), product / iterate));
    }
    if ratios.len() < 3 {
        return Err(LatticeError::TruncationTooSmall(t));
    }
    let first = ratios[0].1.clone();
    if let Some((at, r)) = ratios.iter().find(|(_, r)| *r != first) {
        return Err(LatticeError::UnstableRatio(format!(
            "{} at lifts {} vs {} at {}",
            first, ratios[0].0, r, at
        )));
    }
    let fld = field(spec.field_order())?;
    Ok(CycScalar::from_rational(&fld, &first))
}

/// The scalar of σ₁₂ on the lattice operator of 𝒱_{a₁a₂}^{a₃}, with
/// σ₁₂(𝒴)(w₂, z)w₁ = e^{−πiΔ(𝒴)}e^{zL(−1)}𝒴(w₁, e^{πi}z)w₂.
pub fn derive_s12(spec: &LatticeSpec, x: Space) -> BigRational {
    let (p, q) = (spec.rep_charge(x.0 as u32), spec.rep_charge(x.1 as u32));
    let delta = spec.h(x.2 as u32) - spec.h(x.0 as u32) - spec.h(x.1 as u32);
    let shift = spec.pairing(p, q) - delta;
    debug_assert!(shift.is_integer());
    let sign = if (shift.to_integer() % BigInt::from(2)).is_zero() {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    sign * leading(spec, p, q) / leading(spec, q, p)
}

/// The products σ₁₂[x]·σ₁₂[x′] of the lattice operators, which fix the skew
/// symmetry of the full field algebra.
pub fn skew_constraint(spec: &LatticeSpec) -> Result<SkewConstraint, LatticeError> {
    let fusion = spec.fusion()?;
    let fld = field(spec.field_order())?;
    let mut products = BTreeMap::new();
    for (x, _) in fusion.nonzero_spaces() {
        let xd = fusion.dual_space(x);
        let v = derive_s12(spec, x) * derive_s12(spec, xd);
        debug_assert!(v.abs().is_one());
        products.insert(x, CycScalar::from_rational(&fld, &v));
    }
    Ok(SkewConstraint { products })
}

/// Chiral data of the lattice: F from [`derive_f_entry`] on every admissible
/// key and the S₃ action completed subject to the lattice skew products.
pub fn emit_chiral_data(spec: &LatticeSpec) -> Result<ChiralData, LatticeError> {
    let fusion = spec.fusion()?;
    let fld = field(spec.field_order())?;
    let t = spec.truncation().max(4 * spec.k());
    let mut f = FTensor::new();
    for key in admissible_keys(&fusion) {
        f.insert(key, [0; 4], derive_f_entry(spec, key, t)?);
    }
    let skew = skew_constraint(spec)?;
    let sigma = complete_s3_action(&fusion, &fld, &f, Some(&skew))?;
    Ok(ChiralData::new(fusion, fld, f, sigma, BTreeMap::new())?)
}
