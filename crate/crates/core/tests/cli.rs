// SPDX-License-Identifier: Apache-2.0
//! Runs the `revlogic` binary and checks output and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn revlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revlogic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn build(dir: &Path, args: &[&str], file: &str) -> String {
    let path = dir.join(file);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path_str]);
    let o = revlogic(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    path_str
}

#[test]
fn validate_reports_structure() {
    let o = revlogic(&["validate", fixture("copy.net").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok: copy"));

    for bad in [
        "fanout.net",
        "use_before_def.net",
        "arity.net",
        "duplicate.net",
    ] {
        let o = revlogic(&["validate", fixture(bad).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{bad}");
        assert!(stderr(&o).contains("line "), "{bad}: {}", stderr(&o));
    }
    let o = revlogic(&["validate", "/nonexistent.net"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn syntax_error_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.net");
    std::fs::write(&path, "circuit c\ninputs a\nwire a\noutputs a\nend\n").unwrap();
    let o = revlogic(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));
}

#[test]
fn build_is_byte_stable() {
    let a = revlogic(&["build", "bcd2"]);
    let b = revlogic(&["build", "bcd2", "--carry-in", "primary"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a)
            .lines()
            .filter(|l| l.starts_with("gate HNFG"))
            .count(),
        1
    );
    let c = revlogic(&["build", "bcd2", "--carry-in", "const"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(revlogic(&["build", "bcd-chain"]).status.code(), Some(2));
    assert_eq!(
        revlogic(&["build", "bcd-chain", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(revlogic(&["build", "bcd9"]).status.code(), Some(2));
}

#[test]
fn sim_and_inverse() {
    let dir = tempfile::tempdir().unwrap();
    let bcd = build(dir.path(), &["bcd2"], "bcd2.net");
    // 9 + 9 + 0 = 18
    let o = revlogic(&["sim", &bcd, "--in", "100110010"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("outputs z3 z2 z1 z0 cout = 10001"),
        "{}",
        stdout(&o)
    );

    let o = revlogic(&["sim", &bcd, "--exhaustive"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 512);

    let o = revlogic(&["sim", &bcd, "--exhaustive", "--max-inputs", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-inputs"));

    let copy = fixture("copy.net");
    let o = revlogic(&["inverse", copy.to_str().unwrap(), "--out", "11"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("inputs    a = 1"), "{out}");
    assert!(out.contains("constants z = 0"), "{out}");
    let o = revlogic(&["inverse", copy.to_str().unwrap(), "--out", "10"]);
    assert!(stdout(&o).contains("note: constant z recovered as 1"));
}

#[test]
fn metrics_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), &["bcd1"], "bcd1.net");
    let o = revlogic(&["metrics", &path, "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gate_count"], 15);
    assert_eq!(v["gates"]["PFAG"], 10);
    assert_eq!(v["quantum_cost"], 88);
    assert_eq!(v["garbage"], 23);
    assert_eq!(v["constants"], 19);
    assert_eq!(v["logical"]["xor"], 56);
    assert_eq!(v["logical"]["and"], 21);
    assert_eq!(v["logical"]["not"], 0);
    // keys appear in schema order
    let text = stdout(&o);
    let positions: Vec<usize> = [
        "gate_count",
        "\"gates\"",
        "quantum_cost",
        "garbage",
        "constants",
        "logical",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(positions.windows(2).all(|p| p[0] < p[1]), "{text}");
}

#[test]
fn check_adder_passes_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let ripple = build(dir.path(), &["ripple4"], "r.net");
    let o = revlogic(&["check-adder", &ripple, "--kind", "ripple4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("checked 512 patterns"));

    let chain = build(dir.path(), &["bcd-chain", "2"], "c.net");
    let o = revlogic(&["check-adder", &chain, "--kind", "bcd-chain", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("checked 20000 patterns"));

    // swap the sum wires of bits 1 and 2
    let text = std::fs::read_to_string(&ripple).unwrap();
    let miswired = text.replace("outputs s3 s2 s1 s0 c4", "outputs s3 s1 s2 s0 c4");
    let bad = dir.path().join("bad.net");
    std::fs::write(&bad, miswired).unwrap();
    let o = revlogic(&["check-adder", bad.to_str().unwrap(), "--kind", "ripple4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("counterexamples"));

    let o = revlogic(&["check-adder", &ripple, "--kind", "bcd-chain", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = revlogic(&["check-adder", &ripple, "--kind", "adder"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_json_flags_sources() {
    let dir = tempfile::tempdir().unwrap();
    let bcd = build(dir.path(), &["bcd2"], "bcd2.net");
    let o = revlogic(&["compare", &bcd, "--with-literature", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0]["source"], "computed");
    assert_eq!(rows[0]["garbage"], 23);
    assert_eq!(rows[0]["discrepancies"][0]["claimed"], "24");
    assert!(rows[1..].iter().all(|r| r["source"] == "paper-claimed"));
    assert_eq!(rows[3]["quantum_cost"], serde_json::Value::Null);
}
