use std::process::{Command, Output};

fn fullfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fullfield"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_ising_passes() {
    let o = fullfield(&[
        "verify",
        "ising.json",
        "--suite",
        "pentagon,pairing,fusing,s3,ffa-assoc,skew,invariance",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verdict: PASS\n"));
}

#[test]
fn mutated_bundle_exits_one() {
    let o = fullfield(&["verify", "mut-fusing.json", "--suite", "fusing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("verdict: FAIL\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        fullfield(&["verify", "ising.json", "--suite", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fullfield(&["verify", "missing.json"]).status.code(),
        Some(2)
    );
    assert_eq!(fullfield(&["lattice", "--k", "0"]).status.code(), Some(2));
    assert_eq!(
        fullfield(&["lattice", "--check", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fullfield(&["pairing", "ising.json", "--triple", "s,s"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(fullfield(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_reproducible_and_agree_with_text() {
    let a = fullfield(&["--format", "json", "verify", "z4.json"]);
    let b = fullfield(&["--format", "json", "verify", "z4.json"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = std::env::temp_dir().join(format!("fullfield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    std::fs::write(&path, &a.stdout).unwrap();
    let text = fullfield(&["report", path.to_str().unwrap(), "--format", "text"]);
    let direct = fullfield(&["verify", "z4.json"]);
    assert_eq!(stdout(&text), stdout(&direct));
    let again = fullfield(&["report", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(again.stdout, a.stdout);
}

#[test]
fn pairing_and_dual_print_matrices() {
    let o = fullfield(&["pairing", "ising.json", "--triple", "s,s,e"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(s,s,e): pairing"));
    assert_eq!(
        fullfield(&["pairing", "mut-pairing.json"]).status.code(),
        Some(1)
    );
    let o = fullfield(&["dual", "fibonacci.json"]);
    assert!(stdout(&o).contains("F_t = "));
}

#[test]
fn construct_adds_the_ffa_section() {
    let dir = std::env::temp_dir().join(format!("fullfield-construct-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("z2-ffa.json");
    let emitted = dir.join("z2.json");
    let o = fullfield(&[
        "lattice",
        "--k",
        "1",
        "--check",
        "grading",
        "--emit-bundle",
        emitted.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = fullfield(&[
        "construct",
        emitted.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = fullfield(&["verify", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"ffa\""));
}

#[test]
fn lattice_checks_pass_for_k1() {
    let o = fullfield(&[
        "lattice",
        "--k",
        "1",
        "--truncate",
        "8",
        "--check",
        "assoc,skew,jacobi,virasoro,residue",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("note seed = 1"));
}
