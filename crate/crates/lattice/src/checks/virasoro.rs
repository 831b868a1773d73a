//! Virasoro relations with c = 1 on each chiral half.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use fullfield_core::report::{CheckRecord, Report};

use super::grading::probe_states;
use crate::fock::{basis_states, ExactVector, State};
use crate::full::FullAlgebra;
use crate::spec::LatticeSpec;
use crate::vertex::{apply_formal, gbinom};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// [L(m), L(n)]v − (m−n)L(m+n)v − δ_{m+n,0}(m³−m)/12·c·v.
fn bracket_defect(
    spec: &LatticeSpec,
    v: &ExactVector,
    m: i64,
    n: i64,
    c: &BigRational,
) -> ExactVector {
    let lhs = v
        .virasoro(spec, n)
        .virasoro(spec, m)
        .add(&v.virasoro(spec, m).virasoro(spec, n).scale(&q(-1)));
    let mut rhs = v.virasoro(spec, m + n).scale(&q(m - n));
    if m + n == 0 {
        rhs = rhs.add(&v.scale(&(c * q(m * m * m - m) / q(12))));
    }
    lhs.add(&rhs.scale(&q(-1)))
}

/// Checks on truncated modules, exactly:
/// - [L(m), L(n)] = (m−n)L(m+n) + (m³−m)/12·δ_{m+n,0} with c = 1, for
///   −2 ≤ m, n ≤ 2 on every state of relative weight at most T−2;
/// - the commutator formula
///   [L(m), 𝒴(u, z)] = Σ_j binom(m+1, j) z^{m+1−j} 𝒴(L(j−1)u, z), m ∈ {−1, 0, 1},
///   per output component of relative weight at most T−1;
/// - [L^L(m), L^R(n)] = 0 on basis tensors of F.
pub fn check_virasoro(alg: &FullAlgebra) -> Report {
    let spec = *alg.spec();
    let t = spec.truncation();
    let c = q(1);
    let mut report = Report::new(
        "lattice-virasoro",
        "[L(m),L(n)] = (m-n)L(m+n) + c/12(m^3-m), c = 1",
    );
    for j in 0..spec.modulus() as u32 {
        let states = basis_states(&spec, j, t.saturating_sub(2));
        for m in -2..=2i64 {
            for n in -2..=2i64 {
                if m == n {
                    continue;
                }
                let ok = states.iter().all(|s| {
                    bracket_defect(&spec, &ExactVector::basis(&spec, s.clone()), m, n, &c).is_zero()
                });
                report.push(CheckRecord::exact(
                    "bracket",
                    vec![format!("sector {j}"), format!("m={m}"), format!("n={n}")],
                    ok,
                ));
            }
        }
        report.note(&format!("sector {j} states"), states.len().to_string());
    }

    // commutator formula with vertex operators; at z = 1 every term of a fixed
    // output component carries the same power of z
    let probes = probe_states(&spec);
    let ti = t as i64;
    for u in &probes {
        let uv = ExactVector::basis(&spec, u.clone());
        for v in &probes {
            let vv = ExactVector::basis(&spec, v.clone());
            let y = apply_formal(&spec, &uv, &vv, ti);
            for m in -1..=1i64 {
                let lhs = y
                    .virasoro(&spec, m)
                    .add(&apply_formal(&spec, &uv, &vv.virasoro(&spec, m), ti).scale(&q(-1)));
                let mut rhs = ExactVector::zero(y.sector);
                for jj in 0..=(m + 1) as u32 {
                    let b = BigRational::from_integer(gbinom(m + 1, jj));
                    let lu = uv.virasoro(&spec, jj as i64 - 1);
                    rhs = rhs.add(&apply_formal(&spec, &lu, &vv, ti).scale(&b));
                }
                let ok = lhs
                    .add(&rhs.scale(&q(-1)))
                    .terms
                    .keys()
                    .all(|s| s.rel_weight(&spec) >= ti);
                report.push(CheckRecord::exact(
                    "commutator",
                    vec![u.to_string(), v.to_string(), format!("m={m}")],
                    ok,
                ));
            }
        }
    }

    // left and right Virasoro operators commute on F
    for l in &probes {
        for r in probes
            .iter()
            .filter(|r| spec.sector(r.charge) == spec.dual_sector(spec.sector(l.charge)))
        {
            let tensor = vec![(
                ExactVector::basis(&spec, l.clone()),
                ExactVector::basis(&spec, r.clone()),
            )];
            let mut ok = true;
            for m in -2..=2i64 {
                for n in -2..=2i64 {
                    let lr = on_left(&spec, &on_right(&spec, &tensor, n), m);
                    let rl = on_right(&spec, &on_left(&spec, &tensor, m), n);
                    ok &= expand(&lr) == expand(&rl);
                }
            }
            report.push(CheckRecord::exact(
                "left-right",
                vec![format!("{l}|{r}")],
                ok,
            ));
        }
    }
    report
}

type Tensor = Vec<(ExactVector, ExactVector)>;

fn on_left(spec: &LatticeSpec, t: &Tensor, m: i64) -> Tensor {
    t.iter()
        .map(|(l, r)| (l.virasoro(spec, m), r.clone()))
        .collect()
}

fn on_right(spec: &LatticeSpec, t: &Tensor, n: i64) -> Tensor {
    t.iter()
        .map(|(l, r)| (l.clone(), r.virasoro(spec, n)))
        .collect()
}

/// Coefficients of a tensor on basis pairs.
fn expand(t: &Tensor) -> BTreeMap<(State, State), BigRational> {
    let mut out: BTreeMap<(State, State), BigRational> = BTreeMap::new();
    for (l, r) in t {
        for (a, x) in &l.terms {
            for (b, y) in &r.terms {
                *out.entry((a.clone(), b.clone())).or_insert_with(|| q(0)) += x * y;
            }
        }
    }
    out.retain(|_, c| *c != q(0));
    out
}
