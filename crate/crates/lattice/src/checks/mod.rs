//! Numeric and exact checks of the full field algebra axioms on the lattice.

mod assoc;
mod grading;
mod jacobi;
mod residue;
mod sampling;
mod skew;
mod virasoro;

pub use assoc::{all_sigma_sample, assoc_samples, check_associativity, AssocSample};
pub use grading::check_grading_axioms;
pub use jacobi::{check_jacobi_residues, jacobi_samples, Contour, JacobiSample};
pub use residue::check_residue_lemma;
pub use sampling::{dressed, random_partition};
pub use skew::{check_skew_symmetry, skew_samples, SkewSample};
pub use virasoro::check_virasoro;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use fullfield_core::report::Report;

use crate::fock::{Partition, State};
use crate::full::{FullAlgebra, FullVector};
use crate::spec::{LatticeError, LatticeSpec};

/// The lattice checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Assoc,
    Skew,
    Grading,
    Virasoro,
    Residue,
    Jacobi,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Assoc,
        CheckKind::Skew,
        CheckKind::Grading,
        CheckKind::Virasoro,
        CheckKind::Residue,
        CheckKind::Jacobi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Assoc => "assoc",
            CheckKind::Skew => "skew",
            CheckKind::Grading => "grading",
            CheckKind::Virasoro => "virasoro",
            CheckKind::Residue => "residue",
            CheckKind::Jacobi => "jacobi",
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<CheckKind>, UnknownCheck> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(CheckKind::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A check name that is not one of [`CheckKind::ALL`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "unknown lattice check `{0}` (expected assoc, skew, grading, virasoro, residue, jacobi or all)"
)]
pub struct UnknownCheck(pub String);

impl FromStr for CheckKind {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

/// Sampling parameters shared by the numeric checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            samples: 5,
            seed: 1,
            tol: 1e-6,
        }
    }
}

/// Runs one check at the truncation of the algebra's spec.
pub fn run_check(
    alg: &FullAlgebra,
    kind: CheckKind,
    opts: &RunOptions,
) -> Result<Report, LatticeError> {
    let spec = alg.spec();
    let t = spec.truncation();
    let mut report = match kind {
        CheckKind::Assoc => check_associativity(
            alg,
            &assoc_samples(spec, opts.samples, opts.seed),
            t,
            opts.tol,
        )?,
        CheckKind::Skew => {
            check_skew_symmetry(alg, &skew_samples(spec, opts.samples, opts.seed), opts.tol)?
        }
        CheckKind::Grading => check_grading_axioms(alg),
        CheckKind::Virasoro => check_virasoro(alg),
        CheckKind::Residue => check_residue_lemma(alg),
        CheckKind::Jacobi => check_jacobi_residues(
            alg,
            &jacobi_samples(spec, opts.samples, opts.seed),
            &Contour::default(),
            t,
            opts.tol,
        )?,
    };
    report.note("k", spec.k().to_string());
    report.note("T", t.to_string());
    if matches!(kind, CheckKind::Assoc | CheckKind::Skew | CheckKind::Jacobi) {
        report.note("seed", opts.seed.to_string());
    }
    Ok(report)
}

/// Charges of the left and right factors of a vector of pure basis-charge tensors.
fn charges(v: &FullVector) -> (i64, i64) {
    let (l, r) = &v.terms[0];
    let c = |x: &crate::fock::FockVector| x.terms.keys().next().map(|s| s.charge).unwrap_or(0);
    (c(l), c(r))
}

/// Basis tensors of charges (p, q) with dressing level at most `level` on each side.
fn targets(p: i64, q: i64, level: u32) -> Vec<(State, State)> {
    let parts = Partition::up_to(level);
    let mut out = Vec::new();
    for a in &parts {
        for b in &parts {
            out.push((State::new(p, a.clone()), State::new(q, b.clone())));
        }
    }
    out
}

/// max |x − y| / max |x| over matched components.
fn relative_residual(x: &[Complex64], y: &[Complex64]) -> f64 {
    let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let diff = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Largest relative weight among the target tensors.
fn target_weight(spec: &LatticeSpec, t: &[(State, State)]) -> u32 {
    t.iter()
        .map(|(l, r)| l.rel_weight(spec).max(r.rel_weight(spec)))
        .max()
        .unwrap_or(0) as u32
}
