//! Exact grading, derivative, identity, creation and single-valuedness checks.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use fullfield_core::report::{CheckRecord, Report};

use crate::fock::{basis_states, ExactVector, State};
use crate::full::{FullAlgebra, FullVector};
use crate::spec::LatticeSpec;
use crate::vertex::{apply_formal, exponent};

/// Basis states of every sector with relative weight at most one.
pub(crate) fn probe_states(spec: &LatticeSpec) -> Vec<State> {
    (0..spec.modulus() as u32)
        .flat_map(|j| basis_states(spec, j, 1))
        .collect()
}

/// L(0)-eigenvalue of a basis state, read off from the Virasoro action.
fn l0_weight(spec: &LatticeSpec, s: &State) -> Option<BigRational> {
    let v = ExactVector::basis(spec, s.clone()).virasoro(spec, 0);
    match v.terms.len() {
        0 => Some(BigRational::zero()),
        1 => v.terms.get(s).cloned(),
        _ => None,
    }
}

fn ex(spec: &LatticeSpec, s: &State) -> ExactVector {
    ExactVector::basis(spec, s.clone())
}

/// Checks, exactly on truncated modules:
/// - exponent bookkeeping r = wt(out) − wt(u) − wt(v) against L(0);
/// - the 𝐝-bracket [L(0), 𝒴(u, z)] = z∂_z𝒴(u, z) + 𝒴(L(0)u, z);
/// - the D-derivative 𝒴(L(−1)u, z) = ∂_z𝒴(u, z) = [L(−1), 𝒴(u, z)];
/// - identity 𝕐(𝟏⊗𝟏)v = v and creation 𝕐(u)𝟏 = u + O(z, z̄) with D = 1 on
///   unit spaces;
/// - r − s ∈ ℤ on every term of 𝕐(u; z, z̄)v;
/// - truncation consistency and the vacuum conditions.
pub fn check_grading_axioms(alg: &FullAlgebra) -> Report {
    let spec = *alg.spec();
    let t = spec.truncation() as i64;
    let mut report = Report::new(
        "lattice-grading",
        "d-bracket, D-derivative, identity, creation, single-valuedness",
    );
    let probes = probe_states(&spec);

    // vacuum
    let vac = ExactVector::vacuum();
    report.push(CheckRecord::exact(
        "vacuum",
        vec!["L(0)1".into()],
        vac.virasoro(&spec, 0).is_zero(),
    ));
    report.push(CheckRecord::exact(
        "vacuum",
        vec!["L(-1)1".into()],
        vac.virasoro(&spec, -1).is_zero(),
    ));

    // chiral identities on every pair of probe states
    for u in &probes {
        let uv = ex(&spec, u);
        let lu = uv.virasoro(&spec, -1);
        let Some(wu) = l0_weight(&spec, u) else {
            report.push(CheckRecord::exact("L0-eigen", vec![u.to_string()], false));
            continue;
        };
        for v in &probes {
            let index = vec![u.to_string(), v.to_string()];
            let vv = ex(&spec, v);
            let wv = l0_weight(&spec, v).unwrap_or_else(BigRational::zero);
            let y = apply_formal(&spec, &uv, &vv, t);
            let y2 = apply_formal(&spec, &uv, &vv, t + 2);
            let mut bookkeeping = true;
            let mut bracket = true;
            let mut consistent = true;
            let l0y = y.virasoro(&spec, 0);
            let yl0v = apply_formal(&spec, &uv, &vv.virasoro(&spec, 0), t);
            for (s, c) in &y.terms {
                let r = exponent(&spec, u, v, s);
                let ws = l0_weight(&spec, s);
                bookkeeping &= ws.as_ref().map(|w| *w == &r + &wu + &wv).unwrap_or(false);
                // [L(0), Y(u,z)]v − Y(L(0)u,z)v = z∂_z Y(u,z)v, per component
                let lhs = l0y.coefficient(s) - yl0v.coefficient(s) - &wu * c;
                bracket &= lhs == &r * c;
                consistent &= y2.coefficient(s) == *c;
            }
            consistent &= y2
                .terms
                .keys()
                .all(|s| s.rel_weight(&spec) > t || y.terms.contains_key(s));
            report.push(CheckRecord::exact(
                "exponent-bookkeeping",
                index.clone(),
                bookkeeping,
            ));
            report.push(CheckRecord::exact("d-bracket", index.clone(), bracket));
            report.push(CheckRecord::exact(
                "truncation-consistency",
                index.clone(),
                consistent,
            ));

            // D-derivative: Y(L(−1)u) = ∂_z Y(u) and [L(−1), Y(u)] = ∂_z Y(u)
            let ylu = apply_formal(&spec, &lu, &vv, t);
            let comm = y.virasoro(&spec, -1).add(
                &apply_formal(&spec, &uv, &vv.virasoro(&spec, -1), t)
                    .scale(&-BigRational::from_integer(1.into())),
            );
            let mut deriv = true;
            let mut deriv_comm = true;
            for s in y.terms.keys().chain(ylu.terms.keys()) {
                let r = exponent(&spec, u, v, s);
                deriv &= ylu.coefficient(s) == &r * &y.coefficient(s);
                if s.rel_weight(&spec) < t {
                    deriv_comm &= comm.coefficient(s) == ylu.coefficient(s);
                }
            }
            report.push(CheckRecord::exact("D-derivative", index.clone(), deriv));
            report.push(CheckRecord::exact("D-commutator", index, deriv_comm));
        }
    }

    // full identity, creation and single-valuedness
    let full_probes: Vec<(State, State)> = probes
        .iter()
        .flat_map(|l| {
            probes
                .iter()
                .filter(|r| spec.sector(r.charge) == spec.dual_sector(spec.sector(l.charge)))
                .map(move |r| (l.clone(), r.clone()))
        })
        .collect();
    let vacuum = FullVector::vacuum();
    for (l, r) in &full_probes {
        let index = vec![format!("{l}|{r}")];
        let j = spec.sector(l.charge) as usize;
        let units = [(0, j, j), (j, 0, j)];
        let d_one = units
            .iter()
            .all(|x| alg.prefactor(*x).map(|d| d.is_one()).unwrap_or(false));
        report.push(CheckRecord::exact("unit-prefactor", index.clone(), d_one));

        let (el, er) = (ex(&spec, l), ex(&spec, r));
        let id_l = apply_formal(&spec, &ExactVector::vacuum(), &el, t);
        let id_r = apply_formal(&spec, &ExactVector::vacuum(), &er, t);
        report.push(CheckRecord::exact(
            "identity",
            index.clone(),
            id_l == el && id_r == er,
        ));

        let mut creation = true;
        for (u, side) in [(l, &el), (r, &er)] {
            let c = apply_formal(&spec, side, &ExactVector::vacuum(), t);
            let mut constant = ExactVector::zero(side.sector);
            for (s, coef) in &c.terms {
                let e = exponent(&spec, u, &State::vacuum(), s);
                creation &= !e.is_negative();
                if e.is_zero() {
                    constant.add_term(s.clone(), coef.clone());
                }
            }
            creation &= constant == *side;
        }
        report.push(CheckRecord::exact("creation", index.clone(), creation));

        let fv = FullVector::from_exact(&el, &er);
        let mut single = true;
        for (l2, r2) in full_probes.iter().step_by(3) {
            let gv = FullVector::from_exact(&ex(&spec, l2), &ex(&spec, r2));
            let series = alg.series(&fv, &gv, t as u32);
            single &= series.is_single_valued();
        }
        let series = alg.series(&fv, &vacuum, t as u32);
        single &= series.is_single_valued();
        report.push(CheckRecord::exact("single-valued", index, single));
    }

    report.note("probe states", probes.len().to_string());
    report
}
