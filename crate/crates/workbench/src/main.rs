//! The `fullfield` command line.
//!
//! Exit status: 0 when every verdict passes, 1 when some check fails, 2 on
//! usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fullfield_core::exactnum::{CycMatrix, CycScalar};
use fullfield_core::ffalgebra::construct;
use fullfield_core::fusiondata::Space;
use fullfield_core::report::Report;
use fullfield_lattice::checks::{run_check, CheckKind, RunOptions};
use fullfield_lattice::derive::emit_chiral_data;
use fullfield_lattice::{FullAlgebra, LatticeSpec};
use fullfield_workbench::bundle::{load_bundle, save_bundle, Bundle, Provenance};
use fullfield_workbench::render::{all_passed, render, reports_from_json, Format};
use fullfield_workbench::suites::{run_suite, Suite};
use fullfield_workbench::{fixtures, FixtureError};

#[derive(Parser)]
#[command(
    name = "fullfield",
    version,
    about = "Check full field algebra data and the lattice backend"
)]
struct Cli {
    /// Output format of reports.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fusion data invariants of a bundle.
    Validate { bundle: PathBuf },
    /// Print pairing matrices and their inverses.
    Pairing {
        bundle: PathBuf,
        /// Restrict to one space, given as three label names.
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<String>>,
    },
    /// Print dual-basis coefficients and the weights F_a.
    Dual { bundle: PathBuf },
    /// Construct the full field algebra section and write the extended bundle.
    Construct {
        bundle: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run verification suites on a bundle.
    Verify {
        bundle: PathBuf,
        /// Comma-separated suites or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Run analytic checks of the rank-one lattice full field algebra.
    Lattice {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        truncate: u32,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Comma-separated checks or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        /// Also write the chiral data bundle derived from the lattice.
        #[arg(long)]
        emit_bundle: Option<PathBuf>,
    },
    /// Re-render a saved JSON report; reads standard input without a path.
    Report { input: Option<PathBuf> },
    /// Regenerate the shipped fixture bundles into a directory.
    Fixtures {
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// A usage or input error, reported with exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(reports: &[Report], format: Format) -> bool {
    print!("{}", render(reports, format));
    all_passed(reports)
}

fn run(cli: &Cli) -> Result<bool, Usage> {
    match &cli.command {
        Command::Validate { bundle } => {
            let b = load_bundle(bundle)?;
            Ok(emit(&run_suite(&b, &[Suite::Validate]), cli.format))
        }
        Command::Pairing { bundle, triple } => {
            pairing(&load_bundle(bundle)?, triple.as_deref(), cli.format)
        }
        Command::Dual { bundle } => dual(&load_bundle(bundle)?, cli.format),
        Command::Construct { bundle, output } => {
            let mut b = load_bundle(bundle)?;
            let ch = b.chiral()?;
            let nd = ch.verify_nondegeneracy();
            if !nd.passed() {
                return Ok(emit(&[nd], cli.format));
            }
            b.ffa = Some(construct(ch)?);
            save_bundle(&b, output)?;
            eprintln!("wrote {}", output.display());
            Ok(true)
        }
        Command::Verify { bundle, suite } => {
            let suites = Suite::parse_list(suite)?;
            let b = load_bundle(bundle)?;
            Ok(emit(&run_suite(&b, &suites), cli.format))
        }
        Command::Lattice {
            k,
            truncate,
            samples,
            seed,
            tol,
            check,
            emit_bundle,
        } => {
            let kinds = CheckKind::parse_list(check)?;
            let spec = LatticeSpec::new(*k, *truncate)?;
            let alg = FullAlgebra::new(spec)?;
            if let Some(path) = emit_bundle {
                let chiral = emit_chiral_data(&spec)?;
                let prov = Provenance::new("lattice")
                    .with("k", k.to_string())
                    .with("truncation", truncate.to_string())
                    .with("cocycle", spec.cocycle_description());
                save_bundle(&Bundle::from_chiral(chiral, prov), path)?;
                eprintln!("wrote {}", path.display());
            }
            let opts = RunOptions {
                samples: *samples,
                seed: *seed,
                tol: *tol,
            };
            let reports = kinds
                .into_iter()
                .map(|kind| run_check(&alg, kind, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(emit(&reports, cli.format))
        }
        Command::Report { input } => {
            let text = match input {
                Some(p) => std::fs::read_to_string(p)
                    .map_err(|e| Usage(format!("{}: {e}", p.display())))?,
                None => std::io::read_to_string(std::io::stdin())?,
            };
            Ok(emit(&reports_from_json(&text)?, cli.format))
        }
        Command::Fixtures { output } => {
            for p in fixtures::write_all(output).map_err(|e: FixtureError| Usage(e.to_string()))? {
                eprintln!("wrote {p}");
            }
            Ok(true)
        }
    }
}

fn scalar_json(s: &CycScalar) -> Value {
    json!(s.to_string())
}

fn matrix_json(m: &CycMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_json).collect()))
            .collect(),
    )
}

fn matrix_text(m: &CycMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            format!(
                "[{}]",
                m.row(i)
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn space_of(b: &Bundle, names: &[String]) -> Result<Space, Usage> {
    if names.len() != 3 {
        return Err(Usage(format!(
            "--triple takes three labels a1,a2,a3, got {}",
            names.len()
        )));
    }
    let l = |s: &String| b.fusion.label(s);
    Ok((l(&names[0])?, l(&names[1])?, l(&names[2])?))
}

fn pairing(b: &Bundle, triple: Option<&[String]>, format: Format) -> Result<bool, Usage> {
    let ch = b.chiral()?;
    let spaces: Vec<Space> = match triple {
        Some(t) => {
            let x = space_of(b, t)?;
            if b.fusion.mult(x) == 0 {
                return Err(Usage(format!("{} is a zero space", ch.space_name(x))));
            }
            vec![x]
        }
        None => b
            .fusion
            .nonzero_spaces()
            .into_iter()
            .map(|(x, _)| x)
            .collect(),
    };
    let mut entries = Vec::new();
    let mut ok = true;
    let mut out = String::new();
    for x in spaces {
        let p = ch.pairing_matrix(x);
        let inv = p.as_ref().ok().map(|m| m.inverse());
        let invertible = matches!(inv, Some(Ok(_)));
        ok &= invertible;
        match format {
            Format::Json => entries.push(json!({
                "space": ch.space_name(x),
                "pairing": p.as_ref().map(matrix_json).unwrap_or(Value::Null),
                "inverse": match &inv { Some(Ok(m)) => matrix_json(m), _ => Value::Null },
                "invertible": invertible,
            })),
            Format::Text => {
                let pm = p
                    .as_ref()
                    .map(matrix_text)
                    .unwrap_or_else(|e| format!("error: {e}"));
                out.push_str(&format!("{}: pairing {pm}", ch.space_name(x)));
                match &inv {
                    Some(Ok(m)) => out.push_str(&format!(" inverse {}\n", matrix_text(m))),
                    _ => out.push_str(" singular\n"),
                }
            }
        }
    }
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({"verdict": verdict(ok), "spaces": entries}))?
        ),
        Format::Text => print!("{out}verdict: {}\n", verdict(ok).to_uppercase()),
    }
    Ok(ok)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn dual(b: &Bundle, format: Format) -> Result<bool, Usage> {
    let ch = b.chiral()?;
    let duals = ch.dual_bases()?;
    let fa: Vec<(String, CycScalar)> = b
        .fusion
        .labels()
        .map(|a| Ok((b.fusion.name(a).to_string(), ch.f_a(a)?)))
        .collect::<Result<_, fullfield_core::chiraldata::ChiralError>>()?;
    match format {
        Format::Json => {
            let v = json!({
                "dual_bases": duals.iter().map(|(x, m)| json!({"space": ch.space_name(*x), "dual": matrix_json(m)})).collect::<Vec<_>>(),
                "f_a": fa.iter().map(|(a, v)| json!({"label": a, "value": scalar_json(v)})).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Text => {
            for (x, m) in &duals {
                println!("{}: dual {}", ch.space_name(*x), matrix_text(m));
            }
            for (a, v) in &fa {
                println!("F_{a} = {v}");
            }
        }
    }
    Ok(true)
}
