//! Residue extraction of the invariant pairing:
//! Res_z z^{−1}𝒴_{a′a}^{e}(z^{L(0)}e^{πi(L(0)−h_a)}w̃′, z)z^{L(0)}w̃ = ⟨w′, w⟩𝟏 with
//! w̃ = e^{−L(1)}w.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use fullfield_core::report::{CheckRecord, Report};

use crate::fock::{basis_states, form, ExactVector, State};
use crate::full::FullAlgebra;
use crate::spec::LatticeSpec;
use crate::vertex::apply_formal;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// e^{sL(1)}v for s = ±1.
fn exp_l1(spec: &LatticeSpec, v: &ExactVector, s: i64) -> ExactVector {
    let mut out = v.clone();
    let mut term = v.clone();
    let mut n = 1;
    loop {
        term = term.virasoro(spec, 1).scale(&(q(s) / q(n)));
        if term.is_zero() {
            return out;
        }
        out = out.add(&term);
        n += 1;
    }
}

/// (−1)^{L(0)−h} on a vector of one sector.
fn parity(spec: &LatticeSpec, v: &ExactVector) -> ExactVector {
    let mut out = ExactVector::zero(v.sector);
    for (s, c) in &v.terms {
        let c = if s.rel_weight(spec) % 2 == 0 {
            c.clone()
        } else {
            -c
        };
        out.add_term(s.clone(), c);
    }
    out
}

/// Coefficient of 𝟏 in 𝒴(x, 1)w.
fn vacuum_coefficient(spec: &LatticeSpec, x: &ExactVector, w: &ExactVector) -> BigRational {
    apply_formal(spec, x, w, 0).coefficient(&State::vacuum())
}

/// The residue identity on basis pairs: all pairs of relative weight at most
/// three, orthogonal ones included, and each basis state of relative weight at
/// most T−1 against its dual. The Fock pairing ⟨·,·⟩ is computed from the
/// Heisenberg norm and is first validated by the invariance
/// ⟨𝒴(v, 1)w′, w⟩ = ⟨w′, 𝒴(e^{L(1)}(−1)^{L(0)}v, 1)w⟩ for v in the vacuum sector.
pub fn check_residue_lemma(alg: &FullAlgebra) -> Report {
    let spec = *alg.spec();
    let t = spec.truncation();
    let mut report = Report::new(
        "lattice-residue",
        "Res Y(z^L0 e^{i pi(L0-h)} w~', z) z^L0 w~ = <w',w> 1",
    );
    let ex = |s: &State| ExactVector::basis(&spec, s.clone());

    let vac_states = basis_states(&spec, 0, 2);
    for a in 0..spec.modulus() as u32 {
        let ad = spec.dual_sector(a);
        let small = basis_states(&spec, a, 3);
        let small_dual = basis_states(&spec, ad, 3);

        // invariance of the pairing
        let mut ok = true;
        let mut count = 0;
        for v in &vac_states {
            let vv = ex(v);
            let vstar = exp_l1(&spec, &parity(&spec, &vv), 1);
            for wp in small_dual.iter().filter(|s| s.rel_weight(&spec) <= 2) {
                for w in small.iter().filter(|s| s.rel_weight(&spec) <= 2) {
                    let (wpv, wv) = (ex(wp), ex(w));
                    let lhs = form(&spec, &apply_formal(&spec, &vv, &wpv, t as i64), &wv);
                    let rhs = form(&spec, &wpv, &apply_formal(&spec, &vstar, &wv, t as i64));
                    ok &= lhs == rhs;
                    count += 1;
                }
            }
        }
        report.push(
            CheckRecord::exact("form-invariance", vec![format!("sector {a}")], ok)
                .with_detail(format!("{count} triples")),
        );

        // residue identity on all low pairs
        for w in &small {
            let wt = exp_l1(&spec, &ex(w), -1);
            let mut ok = true;
            for wp in &small_dual {
                let x = parity(&spec, &exp_l1(&spec, &ex(wp), -1));
                ok &= vacuum_coefficient(&spec, &x, &wt) == form(&spec, &ex(wp), &ex(w));
            }
            report.push(CheckRecord::exact(
                "residue",
                vec![format!("sector {a}"), w.to_string()],
                ok,
            ));
        }

        // each state against its dual, up to weight T−1
        let mut ok = true;
        let mut nonzero = true;
        let states = basis_states(&spec, a, t.saturating_sub(1));
        for w in &states {
            let wp = State::new(-w.charge, w.parts.clone());
            let expected = form(&spec, &ex(&wp), &ex(w));
            let x = parity(&spec, &exp_l1(&spec, &ex(&wp), -1));
            let got = vacuum_coefficient(&spec, &x, &exp_l1(&spec, &ex(w), -1));
            ok &= got == expected;
            nonzero &= !expected.is_zero();
        }
        report.push(
            CheckRecord::exact("residue-dual", vec![format!("sector {a}")], ok && nonzero)
                .with_detail(format!("{} states", states.len())),
        );
    }
    report
}
