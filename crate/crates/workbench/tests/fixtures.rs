use std::path::PathBuf;

use fullfield_workbench::fixtures::{all, mutation_name, BASE};
use fullfield_workbench::{load_bundle, render_bundle, run_suite, Suite};

fn shipped(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{stem}.json"))
}

#[test]
fn shipped_fixtures_regenerate_byte_for_byte() {
    for (stem, b) in all().unwrap() {
        let text = std::fs::read_to_string(shipped(&stem)).unwrap();
        assert!(
            render_bundle(&b) == text,
            "{stem}.json differs from its generator output"
        );
    }
}

#[test]
fn shipped_fixtures_round_trip() {
    for (stem, _) in all().unwrap() {
        let text = std::fs::read_to_string(shipped(&stem)).unwrap();
        let b = load_bundle(shipped(&stem)).unwrap();
        assert!(render_bundle(&b) == text, "{stem}.json does not round-trip");
    }
}

#[test]
fn base_fixtures_pass_every_suite() {
    for stem in BASE {
        let b = load_bundle(shipped(stem)).unwrap();
        for r in run_suite(&b, &Suite::ALL) {
            assert!(r.passed(), "{stem}: {r}");
        }
    }
}

#[test]
fn each_mutation_fails_its_suite() {
    for suite in Suite::ALL {
        let b = load_bundle(shipped(&mutation_name(suite))).unwrap();
        let r = run_suite(&b, &[suite]);
        assert!(
            !r[0].passed(),
            "{} passes on its mutation fixture",
            suite.name()
        );
        assert_eq!(
            b.provenance.extra.get("targets").map(String::as_str),
            Some(suite.name())
        );
    }
}

#[test]
fn lattice_fixtures_record_their_cocycle() {
    for stem in ["z2", "z4"] {
        let b = load_bundle(shipped(stem)).unwrap();
        assert_eq!(b.provenance.generator, "lattice");
        assert!(b.provenance.extra["cocycle"].starts_with("eps(a,b)"));
    }
}
