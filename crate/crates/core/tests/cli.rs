use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qect"))
        .args(args)
        .output()
        .expect("spawn qect")
}

fn data(file: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", file]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--out", "json"];
    all.extend_from_slice(args);
    let out = qect(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(args: &[&str]) -> String {
    let out = qect(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn paths_report_totals_and_checks() {
    let v = json(&["paths", "perfect", "--idle", "--merge", "--degree", "2"]);
    let totals: Vec<(String, String)> = v["totals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["a_path"].as_str().unwrap().to_owned(),
                t["b_path"].as_str().unwrap().to_owned(),
            )
        })
        .collect();
    let want = [("1", "1"), ("12", "60"), ("6546", "26130")];
    assert_eq!(totals, want.map(|(a, b)| (a.to_owned(), b.to_owned())));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    assert_eq!(v["meta"]["group_sizes"], serde_json::json!([16, 64]));
    assert_eq!(v["meta"]["logicals"]["Z"], "ZZZZZ");
}

#[test]
fn paths_text_lists_every_series() {
    let s = stdout(&["paths", "d3", "--degree", "1"]);
    for head in [
        "A_path =",
        "B_path =",
        "B_path - A_path =",
        "coset X",
        "coset Y",
        "coset Z",
    ] {
        assert!(s.contains(head), "missing {head:?} in\n{s}");
    }
}

#[test]
fn shor_laflamme_of_the_perfect_code() {
    let s = stdout(&["sl", "5-1-3"]);
    assert!(s.contains("A(z) = 1 + 15*z^4"), "{s}");
    assert!(s.contains("B(z) = 1 + 30*z^3 + 15*z^4 + 18*z^5"), "{s}");
}

#[test]
fn coset_by_logical_name() {
    let v = json(&[
        "coset",
        "perfect",
        "--logical",
        "Z",
        "--degree",
        "1",
        "--merge",
    ]);
    assert_eq!(v["logical"], "Z");
    assert_eq!(v["representative"], "ZZZZZ");
    let out = qect(&["coset", "perfect", "--logical", "W"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown logical"));
}

#[test]
fn trace_with_pauli_probabilities() {
    let s = stdout(&["trace", "--probs", &data("uniform.qc")]);
    for line in ["p_I = 1", "p_X = z", "p_Y = z", "p_Z = z"] {
        assert!(s.lines().any(|l| l == line), "missing {line:?} in\n{s}");
    }
    let v = json(&["trace", "--probs", &data("uniform.qc")]);
    assert_eq!(v["probabilities"].as_array().unwrap().len(), 4);
}

#[test]
fn teleportation_traces_to_identity() {
    let s = stdout(&["trace", &data("teleport.qc")]);
    let entries: Vec<&str> = s
        .lines()
        .filter(|l| l.trim_start().starts_with("e^"))
        .collect();
    assert_eq!(
        entries,
        [
            "  e^{I}_{I} : 1",
            "  e^{X}_{X} : 1",
            "  e^{Y}_{Y} : 1",
            "  e^{Z}_{Z} : 1"
        ]
    );
}

#[test]
fn untraced_tensor_keeps_noise_wires() {
    let v = json(&["tensor", &data("uniform.qc")]);
    assert!(v["tensor"].is_object());
}

#[test]
fn self_checks_pass() {
    for suite in ["gates", "teleportation", "perfect", "duality"] {
        let s = stdout(&["check", suite]);
        assert!(!s.contains("FAIL"), "{suite}:\n{s}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qect(&["check", "gates"]).status.code(), Some(0));
    assert_eq!(qect(&["check", "nosuch"]).status.code(), Some(2));
    assert_eq!(qect(&["paths", "no/such/file"]).status.code(), Some(2));
    assert_eq!(qect(&["trace", "no/such/file.qc"]).status.code(), Some(2));
    assert_eq!(qect(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qect(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_circuit_reports_line() {
    let dir = std::env::temp_dir().join(format!("qect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.qc");
    std::fs::write(&f, "input qubit a\ngate NOPE a\noutput a\n").unwrap();
    let out = qect(&["trace", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("line 2"),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
