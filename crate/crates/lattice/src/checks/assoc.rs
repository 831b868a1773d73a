//! Associativity of the full vertex operator in |z₁| > |z₂| > |z₁−z₂| > 0.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fullfield_core::report::{CheckRecord, Report};

use super::sampling::dressed;
use super::{charges, relative_residual, target_weight, targets};
use crate::fock::{FockVector, State};
use crate::full::{FullAlgebra, FullVector};
use crate::spec::{LatticeError, LatticeSpec};

/// One associativity sample: vectors u, v, w and points z₁, z₂.
#[derive(Debug, Clone)]
pub struct AssocSample {
    pub label: String,
    pub u: FullVector,
    pub v: FullVector,
    pub w: FullVector,
    pub z1: Complex64,
    pub z2: Complex64,
}

fn in_region(z1: Complex64, z2: Complex64) -> bool {
    let z0 = (z1 - z2).norm();
    z1.norm() > z2.norm() && z2.norm() > z0 && z0 > 0.0
}

/// Seeded samples whose product expansion terminates.
///
/// u is charged, v is a lattice vector in the vacuum sector with charge of the
/// same sign as u on each side, and the total dressing of u and v does not
/// exceed their pairing, so 𝕐(u; z₁)𝕐(v; z₂)w is a finite sum. The iterate is
/// a series in (z₁−z₂)/z₂, with the points chosen so that this ratio lies in
/// [0.05, 0.08].
pub fn assoc_samples(spec: &LatticeSpec, n: usize, seed: u64) -> Vec<AssocSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m2k = spec.modulus();
    let mut out = Vec::new();
    for i in 0..n {
        let a = rng.gen_range(1..m2k) as u32;
        let p = spec.lowest_charge(a);
        let pb = spec.lowest_charge(spec.dual_sector(a));
        let (q, qb) = (p.signum() * m2k, pb.signum() * m2k);
        let (budget_l, budget_r) = (
            spec.pairing(p, q).to_integer(),
            spec.pairing(pb, qb).to_integer(),
        );
        let split = |rng: &mut ChaCha8Rng, b: num_bigint::BigInt| {
            let b: u32 = b.try_into().unwrap_or(0);
            let x = rng.gen_range(0..=b);
            (x, b - x)
        };
        let (ul_lvl, vl_lvl) = split(&mut rng, budget_l);
        let (ur_lvl, vr_lvl) = split(&mut rng, budget_r);
        let u = FullVector::pure(
            dressed(&mut rng, spec, p, ul_lvl),
            dressed(&mut rng, spec, pb, ur_lvl),
        );
        let v = FullVector::pure(
            dressed(&mut rng, spec, q, vl_lvl),
            dressed(&mut rng, spec, qb, vr_lvl),
        );
        // w pairs non-integrally with u, so the iterate does not terminate
        let b = loop {
            let b = rng.gen_range(1..m2k) as u32;
            if !spec.pairing(p, b as i64).is_integer() {
                break b;
            }
        };
        // lift of w's charge keeping the total charge small
        let lift = |base: i64, total: i64| {
            [base - m2k, base, base + m2k]
                .into_iter()
                .min_by_key(|r| ((total + r).abs(), r.abs()))
                .expect("nonempty")
        };
        let r = lift(spec.lowest_charge(b), p + q);
        let rb = lift(spec.lowest_charge(spec.dual_sector(b)), pb + qb);
        let w = FullVector::pure(
            dressed(&mut rng, spec, r, 2),
            dressed(&mut rng, spec, rb, 2),
        );
        let (z1, z2) = loop {
            let z1 = Complex64::from_polar(
                rng.gen_range(0.9..1.1),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let t = Complex64::from_polar(rng.gen_range(0.92..0.95), rng.gen_range(-0.06..0.06));
            let s = (Complex64::new(1.0, 0.0) - t).norm() / t.norm();
            if (0.05..=0.08).contains(&s) {
                break (z1, z1 * t);
            }
        };
        out.push(AssocSample {
            label: format!("sample{i}"),
            u,
            v,
            w,
            z1,
            z2,
        });
    }
    out
}

/// u = v = e^{γ}⊗e^{γ′}, w = e^{−γ}⊗e^{−γ′} in the lowest sector a = 1 and its
/// dual, at (z₁, z₂) = (1.0, 0.8).
pub fn all_sigma_sample(spec: &LatticeSpec) -> AssocSample {
    let p = spec.lowest_charge(1);
    let pb = spec.lowest_charge(spec.dual_sector(1));
    let e = |q: i64| FockVector::basis(spec, State::exp(q));
    AssocSample {
        label: "all-sigma".into(),
        u: FullVector::pure(e(p), e(pb)),
        v: FullVector::pure(e(p), e(pb)),
        w: FullVector::pure(e(-p), e(-pb)),
        z1: Complex64::new(1.0, 0.0),
        z2: Complex64::new(0.8, 0.0),
    }
}

/// Relative residual between product and iterate on the low-lying output
/// components, with intermediate sums truncated at relative weight t.
fn residual(alg: &FullAlgebra, s: &AssocSample, t: u32) -> Result<f64, LatticeError> {
    let spec = alg.spec();
    let (ul, ur) = charges(&s.u);
    let (vl, vr) = charges(&s.v);
    let (wl, wr) = charges(&s.w);
    let tg = targets(ul + vl + wl, ur + vr + wr, 2);
    let t_out = target_weight(spec, &tg);
    let inner = alg.apply(&s.v, &s.w, s.z2, t)?.value;
    let product = alg.apply(&s.u, &inner, s.z1, t_out)?.value;
    let inner = alg.apply(&s.u, &s.v, s.z1 - s.z2, t)?.value;
    let iterate = alg.apply(&inner, &s.w, s.z2, t_out)?.value;
    let x: Vec<Complex64> = tg.iter().map(|(l, r)| product.component(l, r)).collect();
    let y: Vec<Complex64> = tg.iter().map(|(l, r)| iterate.component(l, r)).collect();
    Ok(relative_residual(&x, &y))
}

/// Compares 𝕐(u; z₁)𝕐(v; z₂)w with 𝕐(𝕐(u; z₁−z₂)v; z₂)w at truncation t and
/// t+2. A sample passes when the residual at t is within tol and shrinks by at
/// least a factor 4 at t+2. The all-σ triple, whose product expansion is an
/// infinite series in z₂/z₁ = 0.8, is reported as a note.
pub fn check_associativity(
    alg: &FullAlgebra,
    samples: &[AssocSample],
    t: u32,
    tol: f64,
) -> Result<Report, LatticeError> {
    let mut report = Report::new("lattice-assoc", "Y(u;z1)Y(v;z2)w = Y(Y(u;z1-z2)v;z2)w");
    for s in samples {
        if !in_region(s.z1, s.z2) {
            return Err(LatticeError::OutsideRegion {
                z1: s.z1.to_string(),
                z2: s.z2.to_string(),
            });
        }
    }
    for s in samples {
        let r0 = residual(alg, s, t)?;
        let r2 = residual(alg, s, t + 2)?;
        let ratio = if r2 > 0.0 { r0 / r2 } else { f64::INFINITY };
        let index = vec![
            s.label.clone(),
            format!("z1={:.4}", s.z1),
            format!("z2={:.4}", s.z2),
        ];
        report.push(
            CheckRecord::numeric("assoc", index.clone(), r0, tol)
                .with_detail(format!("T+2 residual {r2:.3e}")),
        );
        let mut conv = CheckRecord::exact("truncation-ratio", index, ratio >= 4.0);
        conv.residual = Some(ratio);
        report.push(conv.with_detail(format!("residual(T)/residual(T+2) = {ratio:.3}")));
        report.note(&format!("{} ratio", s.label), format!("{ratio:.3}"));
    }
    let sigma = all_sigma_sample(alg.spec());
    let (r0, r2) = (residual(alg, &sigma, t)?, residual(alg, &sigma, t + 2)?);
    report.note(
        "all-sigma triple (1.0, 0.8)",
        format!(
            "residual {r0:.3e} at T={t}, {r2:.3e} at T={}, ratio {:.3}",
            t + 2,
            r0 / r2
        ),
    );
    Ok(report)
}
