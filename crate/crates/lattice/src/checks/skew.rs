//! Skew symmetry 𝕐(u; z, z̄)v = e^{zD^L + z̄D^R}𝕐(v; −z, −z̄)u.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fullfield_core::report::{CheckRecord, Report};

use super::sampling::dressed;
use super::{charges, relative_residual, target_weight, targets};
use crate::fock::FockVector;
use crate::full::{FullAlgebra, FullVector};
use crate::spec::{LatticeError, LatticeSpec};

/// One skew-symmetry sample.
#[derive(Debug, Clone)]
pub struct SkewSample {
    pub label: String,
    pub u: FullVector,
    pub v: FullVector,
    pub z: Complex64,
}

/// Seeded samples with Heisenberg-dressed vectors in random sectors; the first
/// sample sits at z = 0.7 + 0.2i.
pub fn skew_samples(spec: &LatticeSpec, n: usize, seed: u64) -> Vec<SkewSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m2k = spec.modulus();
    let vector = |rng: &mut ChaCha8Rng| {
        let a = rng.gen_range(0..m2k) as u32;
        let lift = if rng.gen_bool(0.3) { m2k } else { 0 };
        let q = spec.lowest_charge(a) + lift;
        let qb = spec.lowest_charge(spec.dual_sector(a)) - lift;
        let (ll, lr) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        FullVector::pure(dressed(rng, spec, q, ll), dressed(rng, spec, qb, lr))
    };
    (0..n)
        .map(|i| {
            let u = vector(&mut rng);
            let v = vector(&mut rng);
            let z = if i == 0 {
                Complex64::new(0.7, 0.2)
            } else {
                Complex64::from_polar(
                    rng.gen_range(0.3..1.5),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            };
            SkewSample {
                label: format!("sample{i}"),
                u,
                v,
                z,
            }
        })
        .collect()
}

/// e^{zL(−1)}v keeping relative weight at most t.
pub(crate) fn translate(spec: &LatticeSpec, v: &FockVector, z: Complex64, t: i64) -> FockVector {
    let mut out = v.truncate(spec, t);
    let mut term = out.clone();
    let mut n = 1.0;
    loop {
        term = term.virasoro(spec, -1).truncate(spec, t).scale(&(z / n));
        if term.is_zero() {
            return out;
        }
        out = out.add(&term);
        n += 1.0;
    }
}

/// Compares both sides of skew symmetry on every output tensor of dressing
/// level at most 3 per side. The operator 𝕐(v; −z, −z̄)u is exact on these
/// components because e^{zD^L + z̄D^R} only raises weights.
pub fn check_skew_symmetry(
    alg: &FullAlgebra,
    samples: &[SkewSample],
    tol: f64,
) -> Result<Report, LatticeError> {
    let spec = *alg.spec();
    let mut report = Report::new(
        "lattice-skew",
        "Y(u;z)v = exp(z D^L + conj(z) D^R) Y(v;-z)u",
    );
    for s in samples {
        let (ul, ur) = charges(&s.u);
        let (vl, vr) = charges(&s.v);
        let tg = targets(ul + vl, ur + vr, 3);
        let t = target_weight(&spec, &tg);
        let lhs = alg.apply(&s.u, &s.v, s.z, t)?.value;
        let swapped = alg.apply(&s.v, &s.u, -s.z, t)?.value;
        let ti = t as i64;
        let rhs = swapped
            .map_left(|x| translate(&spec, x, s.z, ti))
            .map_right(|x| translate(&spec, x, s.z.conj(), ti));
        let x: Vec<Complex64> = tg.iter().map(|(l, r)| lhs.component(l, r)).collect();
        let y: Vec<Complex64> = tg.iter().map(|(l, r)| rhs.component(l, r)).collect();
        let index = vec![s.label.clone(), format!("z={:.4}", s.z)];
        report.push(CheckRecord::numeric(
            "skew",
            index,
            relative_residual(&x, &y),
            tol,
        ));
    }
    Ok(report)
}
