//! The Cauchy–Jacobi identity by contour quadrature:
//! ∮_{R_out} f⟨w′, 𝕐(X; z)𝕐(u; r)w⟩ − ∮_{R_in} f⟨w′, 𝕐(u; r)𝕐(X; z)w⟩
//! = ∮_{|z−r|=ρ} f⟨w′, 𝕐(𝕐(X; z−r)u; r)w⟩, each integral divided by 2πi,
//! for an insertion X ∈ V⊗V evaluated at (z, z).

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fullfield_core::report::{CheckRecord, Report};

use super::sampling::dressed;
use super::{charges, target_weight, targets};
use crate::fock::State;
use crate::full::{FullAlgebra, FullVector};
use crate::series::BivariateSeries;
use crate::spec::{LatticeError, LatticeSpec};

/// Contours |z| = R_out, |z| = R_in and |z − r| = ρ with `nodes` trapezoid nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub r: f64,
    pub r_out: f64,
    pub r_in: f64,
    pub rho: f64,
    pub nodes: usize,
}

impl Default for Contour {
    fn default() -> Self {
        Contour {
            r: 0.5,
            r_out: 1.2,
            r_in: 0.2,
            rho: 0.2,
            nodes: 256,
        }
    }
}

impl Contour {
    fn validate(&self) -> Result<(), LatticeError> {
        let ordered = self.r_out > self.r && self.r > self.r_in && self.r_in > 0.0;
        if !ordered || self.rho <= 0.0 || self.rho >= (self.r_out - self.r).min(self.r - self.r_in)
        {
            return Err(LatticeError::ContourOrder);
        }
        Ok(())
    }
}

/// One Cauchy–Jacobi configuration.
#[derive(Debug, Clone)]
pub struct JacobiSample {
    pub label: String,
    pub x: FullVector,
    pub u: FullVector,
    pub w: FullVector,
}

/// Seeded configurations: X is a lattice vector of the vacuum sector whose
/// pairings with u and w are nonnegative integers bounding the dressings, so
/// all three correlation functions are Laurent polynomials.
pub fn jacobi_samples(spec: &LatticeSpec, n: usize, seed: u64) -> Vec<JacobiSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m2k = spec.modulus();
    // sectors a with lowest charges of signs (s_L, s_R) on the two sides
    let mut choices = Vec::new();
    for sl in [1i64, -1] {
        for sr in [1i64, -1] {
            let sectors: Vec<u32> = (1..m2k as u32)
                .filter(|&a| {
                    spec.lowest_charge(a) * sl > 0
                        && spec.lowest_charge(spec.dual_sector(a)) * sr > 0
                })
                .collect();
            if !sectors.is_empty() {
                choices.push((sl, sr, sectors));
            }
        }
    }
    (0..n)
        .map(|i| {
            let (sl, sr, sectors) = &choices[rng.gen_range(0..choices.len())];
            let a = sectors[rng.gen_range(0..sectors.len())];
            let b = sectors[rng.gen_range(0..sectors.len())];
            let (p, pb) = (
                spec.lowest_charge(a),
                spec.lowest_charge(spec.dual_sector(a)),
            );
            let (r, rb) = (
                spec.lowest_charge(b),
                spec.lowest_charge(spec.dual_sector(b)),
            );
            let (xq, xqb) = (sl * m2k, sr * m2k);
            let budget =
                |x: i64, c: i64| spec.pairing(x, c).to_integer().to_u32().unwrap_or(0).min(1);
            let x = FullVector::pure(
                dressed(&mut rng, spec, xq, 0),
                dressed(&mut rng, spec, xqb, 0),
            );
            let u = FullVector::pure(
                dressed(&mut rng, spec, p, budget(xq, p)),
                dressed(&mut rng, spec, pb, budget(xqb, pb)),
            );
            let w = FullVector::pure(
                dressed(&mut rng, spec, r, budget(xq, r)),
                dressed(&mut rng, spec, rb, budget(xqb, rb)),
            );
            JacobiSample {
                label: format!("config{i}"),
                x,
                u,
                w,
            }
        })
        .collect()
}

/// Laurent coefficients in z of the target components of a series evaluated
/// at (z, z).
fn laurent(series: &BivariateSeries<FullVector>, l: &State, r: &State) -> BTreeMap<i64, Complex64> {
    let mut out = BTreeMap::new();
    for ((a, b), v) in series.iter() {
        let e = a + b;
        debug_assert!(e.is_integer());
        let c = v.component(l, r);
        if c.norm() > 0.0 {
            *out.entry(e.to_integer().to_i64().expect("small exponent"))
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
    }
    out
}

fn eval_laurent(p: &BTreeMap<i64, Complex64>, z: Complex64) -> Complex64 {
    p.iter().map(|(n, c)| c * z.powi(*n as i32)).sum()
}

/// Test functions f(z).
const TEST_FUNCTIONS: [&str; 4] = ["1", "z", "1/z", "1/(z-r)"];

fn test_function(name: &str, z: Complex64, r: f64) -> Complex64 {
    match name {
        "1" => Complex64::new(1.0, 0.0),
        "z" => z,
        "1/z" => z.inv(),
        _ => (z - r).inv(),
    }
}

/// (1/2πi)∮ g over the circle |z − c| = ρ with n trapezoid nodes.
fn trapezoid(c: f64, rho: f64, n: usize, g: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let e = Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
        acc += g(c + e * rho) * e * rho;
    }
    acc / n as f64
}

/// The three Laurent polynomials: T₁ and T₂ in z, T₃ in z − r.
type Terms = [BTreeMap<i64, Complex64>; 3];

fn correlators(
    alg: &FullAlgebra,
    s: &JacobiSample,
    c: &Contour,
    t: u32,
) -> Result<Vec<((State, State), Terms)>, LatticeError> {
    let spec = alg.spec();
    let r = Complex64::new(c.r, 0.0);
    let (xl, xr) = charges(&s.x);
    let (ul, ur) = charges(&s.u);
    let (wl, wr) = charges(&s.w);
    let tg = targets(xl + ul + wl, xr + ur + wr, 1);
    let t_out = target_weight(spec, &tg);

    // T₁: X acts last on 𝕐(u; r)w
    let inner = alg.apply(&s.u, &s.w, r, t)?.value;
    let s1 = alg.series(&s.x, &inner, t_out);
    // T₂: 𝕐(u; r) acts on each coefficient of 𝕐(X; z)w
    let s2 = alg
        .series(&s.x, &s.w, t)
        .map(|v| alg.apply(&s.u, v, r, t_out).map(|o| o.value));
    // T₃: 𝕐(·; r)w acts on each coefficient of 𝕐(X; z−r)u
    let s3 = alg
        .series(&s.x, &s.u, t)
        .map(|v| alg.apply(v, &s.w, r, t_out).map(|o| o.value));
    let unwrap = |s: BivariateSeries<Result<FullVector, LatticeError>>| -> Result<BivariateSeries<FullVector>, LatticeError> {
        let mut out = BivariateSeries::new();
        for (e, v) in s.iter() {
            *out.entry(e.clone()) = v.clone()?;
        }
        Ok(out)
    };
    let (s2, s3) = (unwrap(s2)?, unwrap(s3)?);
    Ok(tg
        .into_iter()
        .map(|(l, rr)| {
            let terms = [
                laurent(&s1, &l, &rr),
                laurent(&s2, &l, &rr),
                laurent(&s3, &l, &rr),
            ];
            ((l, rr), terms)
        })
        .collect())
}

/// Residues of f·T₁, f·T₂ and f·T₃ read off from the Laurent coefficients.
fn direct(terms: &Terms, f: &str, r: f64) -> [Complex64; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let coef = |p: &BTreeMap<i64, Complex64>, n: i64| p.get(&n).copied().unwrap_or(zero);
    let [p1, p2, p3] = terms;
    let outer = |p: &BTreeMap<i64, Complex64>, inside: bool| -> Complex64 {
        match f {
            "1" => coef(p, -1),
            "z" => coef(p, -2),
            "1/z" => coef(p, 0),
            // 1/(z−r) = Σ r^n z^{−n−1} outside |z| = r, −Σ z^n r^{−n−1} inside
            _ if !inside => p
                .iter()
                .filter(|(n, _)| **n >= 0)
                .map(|(n, c)| c * r.powi(*n as i32))
                .sum(),
            _ => -p
                .iter()
                .filter(|(n, _)| **n < 0)
                .map(|(n, c)| c * r.powi(*n as i32))
                .sum::<Complex64>(),
        }
    };
    // f around z = r in terms of ζ = z − r
    let around = |p: &BTreeMap<i64, Complex64>| -> Complex64 {
        match f {
            "1" => coef(p, -1),
            "z" => coef(p, -2) + coef(p, -1) * r,
            // 1/(r+ζ) = Σ (−1)^n ζ^n r^{−n−1}
            "1/z" => p
                .iter()
                .filter(|(n, _)| **n < 0)
                .map(|(n, c)| {
                    let m = -n - 1;
                    c * (if m % 2 == 0 { 1.0 } else { -1.0 }) * r.powi(-(m as i32) - 1)
                })
                .sum(),
            _ => coef(p, 0),
        }
    };
    [outer(p1, false), outer(p2, true), around(p3)]
}

fn quadrature(terms: &Terms, f: &str, c: &Contour, nodes: usize) -> [Complex64; 3] {
    let [p1, p2, p3] = terms;
    [
        trapezoid(0.0, c.r_out, nodes, |z| {
            test_function(f, z, c.r) * eval_laurent(p1, z)
        }),
        trapezoid(0.0, c.r_in, nodes, |z| {
            test_function(f, z, c.r) * eval_laurent(p2, z)
        }),
        trapezoid(c.r, c.rho, nodes, |z| {
            test_function(f, z, c.r) * eval_laurent(p3, z - c.r)
        }),
    ]
}

/// Checks T₁ − T₂ = T₃ by trapezoid quadrature for f ∈ {1, z, 1/z, 1/(z−r)},
/// compares the quadrature with direct coefficient extraction, and records the
/// change of each term when the step is halved.
pub fn check_jacobi_residues(
    alg: &FullAlgebra,
    samples: &[JacobiSample],
    contour: &Contour,
    t: u32,
    tol: f64,
) -> Result<Report, LatticeError> {
    contour.validate()?;
    let mut report = Report::new(
        "lattice-jacobi",
        "Res_{z} f (Y(X;z)Y(u;r) - Y(u;r)Y(X;z)) = Res_{z-r} f Y(Y(X;z-r)u;r)",
    );
    report.note(
        "contour",
        format!(
            "r={} R_out={} R_in={} rho={} nodes={}",
            contour.r, contour.r_out, contour.r_in, contour.rho, contour.nodes
        ),
    );
    for s in samples {
        let corr = correlators(alg, s, contour, t)?;
        let scale = corr
            .iter()
            .flat_map(|(_, terms)| {
                TEST_FUNCTIONS
                    .iter()
                    .flat_map(move |f| direct(terms, f, contour.r))
            })
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(1.0);
        for f in TEST_FUNCTIONS {
            let mut identity: f64 = 0.0;
            let mut vs_direct: f64 = 0.0;
            let mut halving: f64 = 0.0;
            for (_, terms) in &corr {
                let q = quadrature(terms, f, contour, contour.nodes);
                let q2 = quadrature(terms, f, contour, 2 * contour.nodes);
                let d = direct(terms, f, contour.r);
                identity = identity.max((q[0] - q[1] - q[2]).norm() / scale);
                for i in 0..3 {
                    vs_direct = vs_direct.max((q[i] - d[i]).norm() / scale);
                    halving = halving.max((q[i] - q2[i]).norm() / scale);
                }
            }
            let index = vec![s.label.clone(), format!("f={f}")];
            report.push(CheckRecord::numeric(
                "cauchy-jacobi",
                index.clone(),
                identity,
                tol,
            ));
            report.push(CheckRecord::numeric(
                "quadrature-vs-residue",
                index.clone(),
                vs_direct,
                tol,
            ));
            report.push(CheckRecord::numeric(
                "step-halving",
                index,
                halving,
                tol / 10.0,
            ));
        }
        let nonzero = corr
            .iter()
            .filter(|(_, t)| t.iter().any(|p| !p.is_empty()))
            .count();
        report.note(&format!("{} nonzero targets", s.label), nonzero.to_string());
    }
    Ok(report)
}
