#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use fullfield_core::chiraldata::{admissible_keys, complete_s3_action, ChiralData, FTensor};
use fullfield_core::exactnum::{field, CycField, CycScalar};
use fullfield_core::fusiondata::FusionData;
use num_rational::BigRational;

/// Fusion data of the charge lattice ℤ/2k with weights min(a, 2k−a)²/(4k).
pub fn cyclic_fusion(k: i64) -> FusionData {
    let n = 2 * k;
    let w = (0..n)
        .map(|a| {
            let m = a.min(n - a);
            BigRational::new((m * m).into(), (4 * k).into())
        })
        .collect();
    FusionData::cyclic(n as usize, w).unwrap()
}

/// F = (−1)^{a₃·carry(a₁,a₂)} on ℤ/2k.
pub fn cyclic_f(fu: &FusionData, fld: &Arc<CycField>) -> FTensor {
    let n = fu.rank();
    let mut f = FTensor::new();
    for k in admissible_keys(fu) {
        let carry = usize::from(k[0] + k[1] >= n);
        let s = if (k[2] * carry) % 2 == 0 { 1 } else { -1 };
        f.insert(k, [0; 4], CycScalar::from_integer(fld, s));
    }
    f
}

pub fn cyclic_chiral(k: i64) -> ChiralData {
    let fu = cyclic_fusion(k);
    let fld = field((8 * k) as u32).unwrap();
    let f = cyclic_f(&fu, &fld);
    let sigma = complete_s3_action(&fu, &fld, &f, None).unwrap();
    ChiralData::new(fu, fld, f, sigma, BTreeMap::new()).unwrap()
}

/// Ising labels 1, σ, ε with F from the standard 6j symbols; N = 32.
pub fn ising_chiral() -> ChiralData {
    let w = vec![
        BigRational::from_integer(0.into()),
        BigRational::new(1.into(), 16.into()),
        BigRational::new(1.into(), 2.into()),
    ];
    let mut fusion = BTreeMap::new();
    for (a, b, c) in [
        (0, 0, 0),
        (0, 1, 1),
        (0, 2, 2),
        (1, 0, 1),
        (2, 0, 2),
        (1, 1, 0),
        (1, 1, 2),
        (1, 2, 1),
        (2, 1, 1),
        (2, 2, 0),
    ] {
        fusion.insert((a, b, c), 1);
    }
    let names = ["1", "s", "e"].iter().map(|s| s.to_string()).collect();
    let fu = FusionData::new(names, 0, vec![0, 1, 2], w, fusion).unwrap();
    let fld = field(32).unwrap();
    let half_sqrt2 = CycScalar::from_terms(
        &fld,
        &[(4, 1.into(), 2.into()), (12, (-1).into(), 2.into())],
    )
    .unwrap();
    let mut f = FTensor::new();
    for k in admissible_keys(&fu) {
        // (a₁a₂)_{a₆}a₃ → a₁(a₂a₃)_{a₅} recoupling symbol with outer label a₄.
        let [a1, a2, a3, a4, a5, a6] = k;
        let v = match (a1, a2, a3, a4) {
            (1, 1, 1, 1) if a6 == 2 && a5 == 2 => -&half_sqrt2,
            (1, 1, 1, 1) => half_sqrt2.clone(),
            (1, 2, 1, 2) | (2, 1, 2, 1) => CycScalar::from_integer(&fld, -1),
            _ => CycScalar::one(&fld),
        };
        f.insert(k, [0; 4], v);
    }
    let sigma = complete_s3_action(&fu, &fld, &f, None).unwrap();
    ChiralData::new(fu, fld, f, sigma, BTreeMap::new()).unwrap()
}
