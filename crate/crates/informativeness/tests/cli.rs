//! End-to-end tests of the command-line interface: file formats, exit
//! codes, and machine output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    // target/debug/informativeness relative to the test binary.
    let mut p = std::env::current_exe().unwrap();
    p.pop(); // deps/
    p.pop();
    p.push(format!("informativeness{}", std::env::consts::EXE_SUFFIX));
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn write(dir: &std::path::Path, name: &str, content: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_string_lossy().into_owned()
}

const F: &str = r#"{"states": 2, "signals": 2, "rows": [[0.9, 0.1], [0.2, 0.8]]}"#;
const G: &str = r#"{"states": 2, "signals": 2, "rows": [[0.7, 0.3], [0.4, 0.6]]}"#;
const INCOMPARABLE: &str = r#"{"rows": [[0.6, 0.4], [0.5, 0.5], [0.55, 0.45]]}"#;
const NOT_MLRP: &str =
    r#"{"rows": [[0.32, 0.20, 0.48], [0.21, 0.12, 0.67], [0.21, 0.12, 0.67]]}"#;
const ENTROPY: &str = r#"{"family": "posterior_separable", "prior": [0.5, 0.5]}"#;
const C4: &str = r#"{"family": "binary_example", "which": "c4"}"#;

#[test]
fn validate_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", F);
    let out = run(&["validate", &f, "--mlrp"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // Rows not summing to one: invalid input is exit 1.
    let bad = write(dir.path(), "bad.json", r#"{"rows": [[0.5, 0.4], [0.2, 0.8]]}"#);
    let out = run(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mlrp_check_reports_violation() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "f.json", F);
    assert_eq!(run(&["mlrp-check", &good]).status.code(), Some(0));
    let bad = write(dir.path(), "h.json", NOT_MLRP);
    let out = run(&["mlrp-check", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("minor"));
}

#[test]
fn compare_text_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", F);
    let g = write(dir.path(), "g.json", G);
    let out = run(&["compare", &f, &g]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("relation: geq"));

    // JSON output parses and carries the witness kernel.
    let out = run(&["compare", &f, &g, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["relation"], "geq");
    assert!(v["forward"]["witness"]["entries"].is_array());

    // CSV input is accepted.
    let fc = write(dir.path(), "f.csv", "0.9,0.1\n0.2,0.8\n");
    let out = run(&["compare", &fc, &g]);
    assert_eq!(out.status.code(), Some(0));

    // Incomparable pairs exit 1.
    let h = write(dir.path(), "h.json", INCOMPARABLE);
    let f3 = write(
        dir.path(),
        "f3.json",
        r#"{"rows": [[0.8, 0.2], [0.5, 0.5], [0.3, 0.7]]}"#,
    );
    let out = run(&["compare", &h, &f3]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_verdicts_drive_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let entropy = write(dir.path(), "entropy.json", ENTROPY);
    let out = run(&[
        "audit", "--cost", &entropy, "--states", "2", "--signals", "2", "--budget", "20",
        "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    let c4 = write(dir.path(), "c4.json", C4);
    let out = run(&[
        "audit", "--cost", &c4, "--order", "blackwell", "--states", "2", "--signals", "2",
        "--budget", "20", "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("counterexample-found"));

    // Shape mismatch between cost and sampled experiments is invalid input.
    let out = run(&["audit", "--cost", &entropy, "--states", "3", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let entropy = write(dir.path(), "entropy.json", ENTROPY);
    let args = [
        "audit", "--cost", &entropy, "--states", "2", "--signals", "2", "--budget", "10",
        "--seed", "9", "--format", "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn path_build_and_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", F);
    let g = write(dir.path(), "g.json", G);
    let p = dir.path().join("path.json").to_string_lossy().into_owned();
    let entropy = write(dir.path(), "entropy.json", ENTROPY);

    let out = run(&[
        "path", "build", &f, &g, "--kind", "binary-blackwell", "--out", &p,
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = run(&["path", "verify", &p, "--cost", &entropy]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // A path to a non-dominated target cannot be built.
    let out = run(&[
        "path", "build", &g, &f, "--kind", "binary-blackwell", "--out", &p,
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lehmann_path_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"rows": [[0.6, 0.3, 0.1], [0.2, 0.3, 0.5], [0.1, 0.2, 0.7]]}"#,
    );
    // The reverse-replacement image of f (signal 0 -> 1 in states 0..=1,
    // eps = 0.1), computed by hand from f's rows.
    let g = write(
        dir.path(),
        "g.json",
        r#"{"rows": [[0.54, 0.36, 0.1], [0.18, 0.32, 0.5], [0.1, 0.2, 0.7]]}"#,
    );
    let out = run(&["compare", &f, &g, "--order", "lehmann"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let p = dir.path().join("path.json").to_string_lossy().into_owned();
    let out = run(&["path", "build", &f, &g, "--kind", "lehmann", "--out", &p]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = run(&["path", "verify", &p]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn reproduce_registry() {
    for case in [
        "prop_d1",
        "example_d1",
        "example_e2",
        "mlrp_nonconvex",
        "prop42i_counterexample",
        "bregman_violation",
    ] {
        let out = run(&["reproduce", case, "--budget", "50"]);
        assert_eq!(out.status.code(), Some(0), "case {case}: {out:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    }
    let out = run(&["reproduce", "no_such_case"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_flags_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    // Rows sum to 1 only within 1e-6: rejected by default, accepted with a
    // looser --tol-row.
    let f = write(
        dir.path(),
        "f.json",
        r#"{"rows": [[0.9000005, 0.1], [0.2, 0.8]]}"#,
    );
    assert_eq!(run(&["validate", &f]).status.code(), Some(1));
    assert_eq!(
        run(&["validate", &f, "--tol-row", "1e-5"]).status.code(),
        Some(0)
    );
}
