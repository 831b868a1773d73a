//! Bundle files, fixture generation, suite orchestration and reports.

pub mod bundle;
pub mod fixtures;
pub mod poly;
pub mod render;
pub mod solver;
pub mod suites;

pub use bundle::{
    load_bundle, parse_bundle, render_bundle, save_bundle, Bundle, BundleError, Provenance,
};
pub use fixtures::FixtureError;
pub use render::{all_passed, render, reports_from_json, Format};
pub use solver::{sign_gauge_between, solve_pentagon, SolveError};
pub use suites::{run_suite, Suite};
