//! Verification suites over a bundle and their orchestration.

use std::fmt;
use std::str::FromStr;

use fullfield_core::chiraldata::ChiralData;
use fullfield_core::ffalgebra::{construct, FullFieldAlgebra};
use fullfield_core::report::{CheckRecord, Report};
use thiserror::Error;

use crate::bundle::Bundle;

/// Selectable suites, listed in dependency order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Validate,
    Pentagon,
    Pairing,
    Fusing,
    S3,
    FfaAssoc,
    Skew,
    SingleValued,
    Invariance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?}; expected one of {list}", list = Suite::names().join(","))]
pub struct UnknownSuite(pub String);

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Validate,
        Suite::Pentagon,
        Suite::Pairing,
        Suite::Fusing,
        Suite::S3,
        Suite::FfaAssoc,
        Suite::Skew,
        Suite::SingleValued,
        Suite::Invariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Pentagon => "pentagon",
            Suite::Pairing => "pairing",
            Suite::Fusing => "fusing",
            Suite::S3 => "s3",
            Suite::FfaAssoc => "ffa-assoc",
            Suite::Skew => "skew",
            Suite::SingleValued => "single-valued",
            Suite::Invariance => "invariance",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|s| s.name()).collect()
    }

    /// Parses a comma-separated list; "all" selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, UnknownSuite> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Self::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Whether the suite reads the full field algebra structure.
    fn needs_ffa(self) -> bool {
        matches!(
            self,
            Suite::FfaAssoc | Suite::Skew | Suite::SingleValued | Suite::Invariance
        )
    }
}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn missing(suite: Suite, header: &str, what: &str) -> Report {
    let mut rep = Report::new(suite.name(), header);
    rep.push(CheckRecord::exact("prerequisite", vec![], false).with_detail(what.to_string()));
    rep
}

/// The structure used by the full field algebra suites: the bundle's ffa
/// section when present, otherwise constructed from the chiral data, which
/// requires nondegeneracy.
fn ffa_of(bundle: &Bundle) -> Result<FullFieldAlgebra, String> {
    if let Some(f) = &bundle.ffa {
        return Ok(f.clone());
    }
    let ch = bundle
        .chiral
        .as_ref()
        .ok_or("bundle has no chiral section")?;
    let nd = ch.verify_nondegeneracy();
    if !nd.passed() {
        return Err(format!(
            "nondegeneracy failed ({} checks)",
            nd.failure_count()
        ));
    }
    construct(ch).map_err(|e| e.to_string())
}

fn validate_report(bundle: &Bundle) -> Report {
    let mut rep = Report::new("validate", "fusion data invariants");
    let v = bundle.fusion.validate();
    if v.is_valid() {
        rep.push(CheckRecord::exact("fusion-invariants", vec![], true));
    }
    for x in v.violations {
        rep.push(CheckRecord::exact(x.invariant, x.labels, false).with_detail(x.message));
    }
    rep
}

fn chiral_suite(suite: Suite, ch: &ChiralData, bundle: &Bundle) -> Report {
    match suite {
        Suite::Pentagon => ch.verify_pentagon(),
        Suite::Pairing => {
            let mut rep = ch.verify_nondegeneracy();
            rep.absorb(ch.verify_dual_basis_lemma());
            rep
        }
        Suite::Fusing => match &bundle.ffa {
            Some(f) => {
                let mut rep = ch.verify_prop_fusing_with(f.right_factors());
                rep.note("dual-bases", "ffa right factors");
                rep
            }
            None => ch.verify_prop_fusing(),
        },
        Suite::S3 => ch.verify_s3_invariance(),
        _ => unreachable!("not a chiral suite"),
    }
}

/// Runs the selected suites in dependency order.
pub fn run_suite(bundle: &Bundle, suites: &[Suite]) -> Vec<Report> {
    let mut sel = suites.to_vec();
    sel.sort();
    sel.dedup();
    let ffa = if sel.iter().any(|s| s.needs_ffa()) {
        Some(ffa_of(bundle))
    } else {
        None
    };
    sel.into_iter()
        .map(|s| match s {
            Suite::Validate => validate_report(bundle),
            Suite::Pentagon | Suite::Pairing | Suite::Fusing | Suite::S3 => match &bundle.chiral {
                Some(ch) => chiral_suite(s, ch, bundle),
                None => missing(s, s.name(), "bundle has no chiral section"),
            },
            _ => match ffa.as_ref().expect("computed above") {
                Ok(f) => match s {
                    Suite::FfaAssoc => f.verify_associativity_structure(),
                    Suite::Skew => f.verify_skew_symmetry_structure(),
                    Suite::SingleValued => f.verify_single_valuedness(),
                    Suite::Invariance => f.verify_invariance_structure(),
                    _ => unreachable!(),
                },
                Err(e) => missing(s, s.name(), e),
            },
        })
        .collect()
}
