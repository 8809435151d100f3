//! End-to-end tests for the `formality` binary: exit codes, output
//! determinism, and the distinction between failure and not-applicable.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_formality")
}

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("corpus");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_passes_on_corpus_and_fails_on_broken_input() {
    for name in ["s3.alg", "cp2.alg", "cp3.alg", "dim7.alg", "dim8.alg", "dim9.alg", "dim11.alg", "s2s2s3.alg"] {
        let out = run(&["validate", &corpus(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }

    let text = std::fs::read_to_string(corpus("dim11.alg")).unwrap();

    // A differential landing in the wrong degree is malformed input.
    let broken = text.replace("beta: 1*xy", "beta: 1*xbeta");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(broken.as_bytes()).unwrap();
    let out = run(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "degree-violating differential is a format error");

    // A sign flip keeps the file well-formed but breaks an algebra axiom.
    let broken = text.replace("y * xbeta: -1*w", "y * xbeta: 1*w");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(broken.as_bytes()).unwrap();
    let out = run(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "broken axiom is an assertion failure");
    assert!(stdout(&out).contains("INVALID"));
}

#[test]
fn missing_file_and_bad_flags_are_input_errors() {
    let out = run(&["validate", "/nonexistent/nowhere.alg"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["certify", &corpus("cp2.alg"), "--theorem", "no-such-theorem"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["certify", &corpus("dim11.alg"), "--theorem", "canonicity"]);
    assert_eq!(out.status.code(), Some(2), "canonicity without --second-metric");

    let out = run(&["hodge", &corpus("dim11.alg"), "--metric", "/nonexistent.metric"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_distinguishes_pass_from_not_applicable() {
    let out = run(&["certify", &corpus("cp3.alg"), "--theorem", "miller"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: certified"));

    let out = run(&["certify", &corpus("dim7.alg"), "--theorem", "miller"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("not applicable"));

    let out = run(&["certify", &corpus("dim11.alg"), "--theorem", "A2", "--ell", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(&["certify", &corpus("dim11.alg"), "--theorem", "A2", "--ell", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn obstruction_report_is_a_finding_not_a_failure() {
    let out = run(&["harrison-obstruction", &corpus("dim11.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("UNSOLVABLE"));
    assert!(text.contains("certificate:"));

    let out = run(&["harrison-obstruction", &corpus("cp2.alg")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SOLVABLE"));
}

#[test]
fn bianchi_massey_reports_nonzero_kernel_restriction_on_dim11() {
    let out = run(&["bianchi-massey", &corpus("dim11.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("nonzero"));
    assert!(text.contains("four-term identity: verified"));
}

#[test]
fn compare_hodge_certifies_dim11_with_two_metrics() {
    let out = run(&[
        "compare-hodge",
        &corpus("dim11.alg"),
        "--other-metric",
        &corpus("dim11-scaled.metric"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: certified"));
}

#[test]
fn machine_output_is_valid_json_and_byte_deterministic() {
    for args in [
        vec!["cohomology", &corpus("dim8.alg"), "--format", "machine"],
        vec!["transfer", &corpus("dim11.alg"), "--max-arity", "4", "--format", "machine"],
        vec!["harrison-obstruction", &corpus("dim11.alg"), "--format", "machine"],
        vec!["certify", &corpus("dim8.alg"), "--theorem", "zhou", "--ell", "4", "--format", "machine"],
    ] {
        let strs: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        let a = run(&strs);
        let b = run(&strs);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid json");
        assert!(v.is_object());
    }
}

#[test]
fn check_passes_on_transferred_structures() {
    for name in ["cp2.alg", "dim8.alg", "dim11.alg"] {
        let out = run(&["check", &corpus(name), "--max-arity", "4", "--max-p", "4"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }
}
