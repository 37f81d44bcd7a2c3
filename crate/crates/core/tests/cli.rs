use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-verify"))
        .args(args)
        .output()
        .expect("spawn artin-verify")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_d4_json() {
    let out = run(&["--format", "json", "--reproducible", "verify", "d4"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["runtime_ms"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    let actual: Vec<&str> = checks.iter().filter_map(|c| c["actual"].as_str()).collect();
    for n in ["14400", "40", "8640", "24"] {
        assert!(actual.contains(&n), "missing {n} in {actual:?}");
    }
}

#[test]
fn reproducible_reports_are_identical() {
    let args = ["--format", "json", "--reproducible", "verify", "h3-zeta"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "Q4"]).status.code(), Some(2));
    // the small-rank oracle finds classes outside the cyclic/standard dichotomy
    assert_eq!(
        run(&["verify", "artin-lin-smallrank(5)"]).status.code(),
        Some(1)
    );
    let tiny = run(&[
        "--engine-bound",
        "10",
        "word",
        "--graph",
        "A3",
        "--nf",
        "s1 s2",
    ]);
    assert_eq!(tiny.status.code(), Some(3));
}

#[test]
fn classify_and_words() {
    let out = run(&[
        "--format", "json", "classify", "--left", "D4", "--right", "F4",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["verdict"], "NotCommensurable");

    let out = run(&[
        "--format",
        "json",
        "word",
        "--graph",
        "F4",
        "--equal",
        "(s1 s2 s3 s4)^6",
        "DELTA",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("true"));
}

#[test]
fn h3_quotient_homs() {
    let out = run(&[
        "--format",
        "json",
        "homs",
        "--graph",
        "H3",
        "--degree",
        "5",
        "--mod-center",
        "--non-cyclic",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("240"), "{text}");
}

#[test]
fn cache_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let built = run(&["--cache-dir", d, "--format", "json", "cache", "build", "B3"]);
    assert!(built.status.success());
    assert_eq!(json(&built)[0]["elements"], 48);

    let ok = run(&["--cache-dir", d, "cache", "verify", "B3"]);
    assert_eq!(ok.status.code(), Some(0));

    let path = dir.path().join("B3.artw");
    let mut bytes = fs::read(&path).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0x5a;
    fs::write(&path, bytes).unwrap();
    let bad = run(&[
        "--cache-dir",
        d,
        "--format",
        "json",
        "cache",
        "verify",
        "B3",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)[0]["status"], "corrupt");

    assert_eq!(run(&["cache", "verify", "B3"]).status.code(), Some(2));
}
