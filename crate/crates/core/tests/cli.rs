use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn weightforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weightforge"))
        .args(args)
        .env_remove("WEIGHTFORGE_ENUM_CAP")
        .output()
        .unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn construct(dir: &Path, args: &[&str], name: &str) -> Value {
    let out = path(dir, &format!("{name}.code"));
    let report = path(dir, &format!("{name}.json"));
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &out, "--report", &report]);
    let o = weightforge(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap()
}

#[test]
fn construct_mws_report() {
    let dir = tempfile::tempdir().unwrap();
    let r = construct(
        dir.path(),
        &["mws", "--q", "3", "--k", "2", "--seed", "7"],
        "c",
    );
    assert_eq!(r["distinct_total"], 5);
    assert_eq!(r["is_mws"], true);
    assert_eq!(r["bound"], 5);
    assert!(r["trace"]["steps"].is_array());
}

#[test]
fn construct_simplex_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let r = construct(dir.path(), &["simplex", "--q", "2", "--k", "3"], "s");
    assert_eq!(r["n"], 7);
    assert_eq!(r["distinct_nonzero"], 1);
    assert!(r.get("trace").is_none());

    let o = weightforge(&["verify", &path(dir.path(), "s.code")]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("spectrum: 0:1, 4:7\n"), "{text}");

    let o = weightforge(&["verify", &path(dir.path(), "s.code"), "--expect-mws"]);
    assert_eq!(o.status.code(), Some(1));
    let o = weightforge(&[
        "verify",
        &path(dir.path(), "s.code"),
        "--expect-distinct",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn weights_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let r = construct(
        dir.path(),
        &["weights", "--k", "4", "--s", "9", "--seed", "1"],
        "w",
    );
    assert_eq!(r["distinct_nonzero"], 9);
    assert_eq!(r["k"], 4);
    let o = weightforge(&[
        "verify",
        &path(dir.path(), "w.code"),
        "--expect-nonzero",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = weightforge(&[
        "construct",
        "weights",
        "--q",
        "3",
        "--k",
        "2",
        "--s",
        "1",
        "--out",
        &path(dir.path(), "x.code"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = weightforge(&[
        "construct",
        "weights",
        "--k",
        "3",
        "--s",
        "8",
        "--out",
        &path(dir.path(), "x.code"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mws_three_three_verifies() {
    let dir = tempfile::tempdir().unwrap();
    construct(dir.path(), &["mws", "--q", "3", "--k", "3"], "m");
    let o = weightforge(&[
        "verify",
        &path(dir.path(), "m.code"),
        "--expect-distinct",
        "14",
        "--expect-mws",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
}

#[test]
fn lemma_kinds_read_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(dir.path(), "in.code");
    fs::write(&input, "weightforge-code v1\nq=3 k=1 n=3\n1 1 1\n").unwrap();
    let r = construct(dir.path(), &["lemma3", "--input", &input], "l3");
    assert_eq!(r["distinct_nonzero"], 2);
    assert_eq!(r["k"], 2);
    let r = construct(dir.path(), &["lemma4", "--input", &input], "l4");
    assert_eq!(r["distinct_nonzero"], 4);
    let o = weightforge(&["construct", "lemma3", "--out", &path(dir.path(), "x.code")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.code");
    fs::write(&bad, "weightforge-code v1\nq=2 k=2 n=3\n1 0 1\n0 1\n").unwrap();
    assert_eq!(weightforge(&["verify", &bad]).status.code(), Some(2));

    fs::write(&bad, "weightforge-code v1\nq=2 k=2 n=3\n1 0 1\n1 0 1\n").unwrap();
    let o = weightforge(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank 1"));

    assert_eq!(
        weightforge(&["verify", &path(dir.path(), "missing.code")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        weightforge(&["construct", "mws", "--q", "6", "--k", "2", "--out", &bad])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(weightforge(&["bogus"]).status.code(), Some(2));
}

#[test]
fn reachable_output() {
    let o = weightforge(&["reachable", "--q", "2", "--k", "5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("reachable: 1..31\ngaps: none\n"), "{text}");
    let o = weightforge(&["reachable", "--q", "3", "--k", "2"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("reachable: 1..2, 4\ngaps: 3\n"), "{text}");
    let o = weightforge(&["reachable", "--q", "3", "--k", "1"]);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("reachable: 1\n"));
    assert_eq!(
        weightforge(&["reachable", "--q", "2", "--k", "80"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumeration_cap_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "c.code");
    let o = Command::new(env!("CARGO_BIN_EXE_weightforge"))
        .args([
            "construct",
            "simplex",
            "--q",
            "2",
            "--k",
            "5",
            "--out",
            &out,
        ])
        .env("WEIGHTFORGE_ENUM_CAP", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_weightforge"))
        .args([
            "construct",
            "simplex",
            "--q",
            "2",
            "--k",
            "5",
            "--out",
            &out,
        ])
        .env("WEIGHTFORGE_ENUM_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_goes_to_stdout_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let o = weightforge(&[
        "construct",
        "simplex",
        "--q",
        "3",
        "--k",
        "2",
        "--out",
        &path(dir.path(), "s.code"),
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spectrum"], serde_json::json!([[0, 1], [3, 8]]));
    // keys come out sorted
    let text = String::from_utf8(o.stdout).unwrap();
    let keys: Vec<usize> = [
        "\"bound\"",
        "\"distinct_nonzero\"",
        "\"distinct_total\"",
        "\"is_mws\"",
        "\"k\"",
        "\"n\"",
        "\"q\"",
        "\"spectrum\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}
