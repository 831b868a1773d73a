//! The shipped fixture bundles and their mutations.
//!
//! Base fixtures carry chiral data and the constructed full field algebra
//! section. Each mutation fixture changes one datum of the Ising bundle so that
//! its targeted suite fails.

use std::collections::BTreeMap;
use std::path::Path;

use fullfield_core::chiraldata::{admissible_keys, complete_s3_action, ChiralData, FTensor};
use fullfield_core::exactnum::{field, CycScalar};
use fullfield_core::ffalgebra::{construct, FullFieldAlgebra};
use fullfield_core::fusiondata::FusionData;
use fullfield_lattice::derive::emit_chiral_data;
use fullfield_lattice::LatticeSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::bundle::{render_bundle, Bundle, BundleError, Provenance};
use crate::solver::{solve_pentagon, SolveError};
use crate::suites::{run_suite, Suite};

/// Failures while generating fixtures.
#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Lattice(#[from] fullfield_lattice::LatticeError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("{0}")]
    Build(String),
    #[error("no candidate mutation makes suite {0} fail")]
    NoMutation(Suite),
}

/// Names of the base fixtures.
pub const BASE: [&str; 5] = ["trivial", "z2", "z4", "ising", "fibonacci"];

/// Truncation used when emitting lattice fixtures.
pub const LATTICE_TRUNCATION: u32 = 8;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn build<E: std::fmt::Display>(e: E) -> FixtureError {
    FixtureError::Build(e.to_string())
}

fn table(
    names: &[&str],
    weights: Vec<BigRational>,
    dual: Vec<usize>,
    rules: &[(usize, usize, usize)],
) -> Result<FusionData, FixtureError> {
    let fusion = rules.iter().map(|&s| (s, 1)).collect();
    FusionData::new(
        names.iter().map(|s| s.to_string()).collect(),
        0,
        dual,
        weights,
        fusion,
    )
    .map_err(build)
}

/// Ising fusion rules with labels 1, s, e.
pub fn ising_fusion() -> Result<FusionData, FixtureError> {
    let rules = [
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
    ];
    table(
        &["1", "s", "e"],
        vec![q(0, 1), q(1, 16), q(1, 2)],
        vec![0, 1, 2],
        &rules,
    )
}

/// Fibonacci fusion rules with labels 1, t.
pub fn fibonacci_fusion() -> Result<FusionData, FixtureError> {
    let rules = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)];
    table(&["1", "t"], vec![q(0, 1), q(2, 5)], vec![0, 1], &rules)
}

fn with_ffa(chiral: ChiralData, provenance: Provenance) -> Result<Bundle, FixtureError> {
    let ffa = construct(&chiral).map_err(build)?;
    let mut b = Bundle::from_chiral(chiral, provenance);
    b.ffa = Some(ffa);
    Ok(b)
}

fn passes_all(b: &Bundle) -> bool {
    run_suite(b, &Suite::ALL).iter().all(|r| r.passed())
}

/// The first solver solution whose completed bundle passes every suite.
fn solved(name: &str, fusion: FusionData, order: u32) -> Result<Bundle, FixtureError> {
    let fld = field(order).map_err(build)?;
    for (i, f) in solve_pentagon(&fusion, &fld)?.into_iter().enumerate() {
        let Ok(sigma) = complete_s3_action(&fusion, &fld, &f, None) else {
            continue;
        };
        let chiral = ChiralData::new(fusion.clone(), fld.clone(), f, sigma, BTreeMap::new())
            .map_err(build)?;
        let prov = Provenance::new("solve_pentagon")
            .with("fixture", name)
            .with("solution", i.to_string());
        let b = with_ffa(chiral, prov)?;
        if passes_all(&b) {
            return Ok(b);
        }
    }
    Err(FixtureError::Build(format!(
        "no solver solution for {name} passes every suite"
    )))
}

/// The ℤ/2k bundle emitted by the lattice with k given.
pub fn lattice_bundle(name: &str, k: u32) -> Result<Bundle, FixtureError> {
    let spec = LatticeSpec::new(k, LATTICE_TRUNCATION)?;
    let chiral = emit_chiral_data(&spec)?;
    let prov = Provenance::new("lattice")
        .with("fixture", name)
        .with("k", k.to_string())
        .with("truncation", LATTICE_TRUNCATION.to_string())
        .with("cocycle", spec.cocycle_description());
    with_ffa(chiral, prov)
}

fn trivial() -> Result<Bundle, FixtureError> {
    let fusion = FusionData::cyclic(1, vec![q(0, 1)]).map_err(build)?;
    let fld = field(2).map_err(build)?;
    let mut f = FTensor::new();
    for k in admissible_keys(&fusion) {
        f.insert(k, [0; 4], CycScalar::one(&fld));
    }
    let sigma = complete_s3_action(&fusion, &fld, &f, None).map_err(build)?;
    let chiral = ChiralData::new(fusion, fld, f, sigma, BTreeMap::new()).map_err(build)?;
    with_ffa(
        chiral,
        Provenance::new("fixtures").with("fixture", "trivial"),
    )
}

/// A base fixture by name.
pub fn base(name: &str) -> Result<Bundle, FixtureError> {
    match name {
        "trivial" => trivial(),
        "z2" => lattice_bundle(name, 1),
        "z4" => lattice_bundle(name, 2),
        "ising" => solved(name, ising_fusion()?, 32),
        "fibonacci" => solved(name, fibonacci_fusion()?, 20),
        _ => Err(FixtureError::Unknown(name.to_string())),
    }
}

/// File name of the mutation fixture targeting a suite.
pub fn mutation_name(suite: Suite) -> String {
    format!("mut-{}", suite.name())
}

fn rebuild_chiral(
    b: &Bundle,
    f: FTensor,
    sigma: fullfield_core::chiraldata::S3Action,
) -> Result<ChiralData, FixtureError> {
    let ch = b.chiral()?;
    ch.with_parts(f, sigma, ch.markers().clone()).map_err(build)
}

fn chiral_only(b: &Bundle, chiral: ChiralData, suite: Suite) -> Bundle {
    Bundle::from_chiral(chiral, mutated_provenance(b, suite))
}

fn mutated_provenance(b: &Bundle, suite: Suite) -> Provenance {
    let mut p = Provenance::new("fixtures");
    p.extra = b.provenance.extra.clone();
    p.with("fixture", mutation_name(suite))
        .with("targets", suite.name())
}

fn with_parts(
    b: &Bundle,
    suite: Suite,
    f: impl FnOnce(&FullFieldAlgebra) -> Result<FullFieldAlgebra, FixtureError>,
) -> Result<Bundle, FixtureError> {
    let ffa = b
        .ffa
        .as_ref()
        .ok_or_else(|| FixtureError::Build("base bundle has no ffa section".into()))?;
    let mut out = b.clone();
    out.provenance = mutated_provenance(b, suite);
    out.ffa = Some(f(ffa)?);
    Ok(out)
}

fn fails(b: &Bundle, suite: Suite) -> bool {
    !run_suite(b, &[suite])[0].passed()
}

/// Candidate mutations of the Ising bundle targeting a suite, in a fixed order.
fn candidates(b: &Bundle, suite: Suite) -> Result<Vec<Bundle>, FixtureError> {
    let ch = b.chiral()?;
    let fld = b.field()?;
    let fu = &b.fusion;
    let two = CycScalar::from_integer(&fld, 2);
    let mut out = Vec::new();
    match suite {
        Suite::Validate => {
            // drop N_{e s}^{s} while keeping N_{s e}^{s}
            let mut rules = fu.fusion_table().clone();
            rules.remove(&(2, 1, 1));
            let broken = FusionData::new(
                fu.names().to_vec(),
                fu.unit(),
                fu.duals().to_vec(),
                fu.weights().to_vec(),
                rules,
            )
            .map_err(build)?;
            out.push(Bundle {
                field_order: b.field_order,
                provenance: mutated_provenance(b, suite),
                fusion: broken,
                chiral: None,
                ffa: None,
            });
        }
        Suite::Pentagon | Suite::Pairing | Suite::Fusing => {
            let keys: Vec<_> = ch.f_tensor().iter().map(|(k, _)| *k).collect();
            for (k, m) in keys {
                let v = ch.f_tensor().get(k, m).expect("listed entry").clone();
                let replacement = match suite {
                    Suite::Pentagon => -&v,
                    Suite::Pairing => CycScalar::zero(&fld),
                    _ => v.try_mul(&two).map_err(build)?,
                };
                let mut f = ch.f_tensor().clone();
                f.insert(k, m, replacement);
                out.push(chiral_only(
                    b,
                    rebuild_chiral(b, f, ch.sigma().clone())?,
                    suite,
                ));
            }
        }
        Suite::S3 => {
            for s in ch.sigma().s12.keys() {
                let mut sigma = ch.sigma().clone();
                let m = sigma.s12[s].scale(&-CycScalar::one(&fld));
                sigma.s12.insert(*s, m);
                out.push(chiral_only(
                    b,
                    rebuild_chiral(b, ch.f_tensor().clone(), sigma)?,
                    suite,
                ));
            }
        }
        Suite::FfaAssoc | Suite::Invariance => {
            let factor = if suite == Suite::FfaAssoc {
                -CycScalar::one(&fld)
            } else {
                two.clone()
            };
            let ffa = b
                .ffa
                .as_ref()
                .ok_or_else(|| FixtureError::Build("base bundle has no ffa section".into()))?;
            for x in ffa.right_factors().keys() {
                out.push(with_parts(b, suite, |ffa| {
                    let mut right = ffa.right_factors().clone();
                    let m = right[x].scale(&factor);
                    right.insert(*x, m);
                    FullFieldAlgebra::from_parts(
                        ffa.chiral().clone(),
                        ffa.left_weights().to_vec(),
                        ffa.right_weights().to_vec(),
                        right,
                    )
                    .map_err(build)
                })?);
            }
        }
        Suite::Skew | Suite::SingleValued => {
            // shift the right weight of a nonunit label by 1 (a sign in every
            // phase) or by 1/2 (a non-integral spin)
            let shift = if suite == Suite::Skew {
                q(1, 1)
            } else {
                q(1, 2)
            };
            for a in fu.labels().filter(|&a| a != fu.unit()) {
                out.push(with_parts(b, suite, |ffa| {
                    let mut w = ffa.right_weights().to_vec();
                    w[a] += &shift;
                    FullFieldAlgebra::from_parts(
                        ffa.chiral().clone(),
                        ffa.left_weights().to_vec(),
                        w,
                        ffa.right_factors().clone(),
                    )
                    .map_err(build)
                })?);
            }
        }
    }
    Ok(out)
}

/// The mutation fixture targeting a suite: the first candidate mutation of
/// the Ising bundle under which the suite fails.
pub fn mutation(suite: Suite) -> Result<Bundle, FixtureError> {
    let b = base("ising")?;
    candidates(&b, suite)?
        .into_iter()
        .find(|m| fails(m, suite))
        .ok_or(FixtureError::NoMutation(suite))
}

/// Every fixture as (file stem, bundle), base fixtures first.
pub fn all() -> Result<Vec<(String, Bundle)>, FixtureError> {
    let mut out = Vec::new();
    for name in BASE {
        out.push((name.to_string(), base(name)?));
    }
    for suite in Suite::ALL {
        out.push((mutation_name(suite), mutation(suite)?));
    }
    Ok(out)
}

/// Writes every fixture as `<stem>.json` into a directory.
pub fn write_all(dir: impl AsRef<Path>) -> Result<Vec<String>, FixtureError> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|source| BundleError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for (stem, b) in all()? {
        let path = dir.join(format!("{stem}.json"));
        std::fs::write(&path, render_bundle(&b)).map_err(|source| BundleError::Io {
            path: path.display().to_string(),
            source,
        })?;
        written.push(path.display().to_string());
    }
    Ok(written)
}
