use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn tdli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdli")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_theyting_passes() {
    let o = tdli(&["check", path(&fixture("b2.alg")), "--profile", "theyting"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("I5 holds"), "{text}");
    assert!(text.contains("T6:derived holds"), "{text}");
}

#[test]
fn check_failure_exits_one_with_report() {
    let o = tdli(&["--json", "check", path(&fixture("b2_no_mp.alg")), "--profile", "dli+"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algebra"], "B2bad");
    assert_eq!(v["profile"], "dli+");
    assert_eq!(v["summary"]["failed"], 1);
    let i5 = v["axioms"].as_array().unwrap().iter().find(|a| a["id"] == "I5").unwrap();
    assert_eq!(i5["holds"], false);
    assert_eq!(i5["witness"], serde_json::json!(["1", "0"]));
}

#[test]
fn exit_zero_iff_no_failed_axioms() {
    for (file, profile) in [("b2.alg", "theyting"), ("chain3.alg", "tdli01"), ("b2_no_mp.alg", "dli")] {
        let o = tdli(&["--json", "check", path(&fixture(file)), "--profile", profile]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(o.status.code() == Some(0), v["summary"]["failed"] == 0, "{file}");
    }
}

#[test]
fn input_errors_exit_two() {
    for file in ["short_row.alg", "unknown_name.alg", "missing.alg"] {
        let o = tdli(&["check", path(&fixture(file))]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = tdli(&["check", path(&fixture("unknown_name.alg"))]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`q`"));
}

#[test]
fn kalman_then_check_itkic1() {
    let dir = TempDir::new().unwrap();
    let kb2 = dir.path().join("kb2.alg");
    let o = tdli(&["kalman", path(&fixture("b2.alg")), "-o", path(&kb2)]);
    assert_eq!(o.status.code(), Some(0));
    let o = tdli(&["check", path(&kb2), "--profile", "itkic1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = tdli(&["congruences", path(&kb2), "--as", "deductive-systems"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("centered-tense-ds of K(B2): 2"));
    let o = tdli(&["--json", "congruences", path(&kb2)]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn center_recovers_the_input() {
    let dir = TempDir::new().unwrap();
    let (k, c) = (dir.path().join("k.alg"), dir.path().join("c.alg"));
    assert!(tdli(&["kalman", path(&fixture("chain3.alg")), "-o", path(&k)]).status.success());
    assert!(tdli(&["center", path(&k), "-o", path(&c)]).status.success());
    let o = tdli(&["iso", path(&fixture("chain3.alg")), path(&c)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "isomorphism from C3 to C(K(C3))\n  0 -> (0,0)\n  m -> (m,0)\n  1 -> (1,0)\n"
    );
    let o = tdli(&["verify-equivalence", path(&k)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphism: true"));
}

#[test]
fn congruences_of_three_chain() {
    let o = tdli(&["congruences", path(&fixture("chain3.alg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "congruence of C3: 3\n  {0} {m} {1}\n  {0} {m, 1}\n  {0, m, 1}\n"
    );
    let o = tdli(&["congruences", path(&fixture("chain3.alg")), "--as", "filters"]);
    assert!(stdout(&o).starts_with("tense-one-filter of C3: 3"));
}

#[test]
fn enumerate_tense_respects_flags() {
    let b2 = fixture("b2.alg");
    let count = |extra: &[&str]| {
        let mut args = vec!["--json", "enumerate-tense", path(&b2)];
        args.extend_from_slice(extra);
        let v: Value = serde_json::from_str(&stdout(&tdli(&args))).unwrap();
        v["count"].as_u64().unwrap()
    };
    assert_eq!(count(&[]), 1);
    assert_eq!(count(&["--no-t0"]), 2);
    assert_eq!(count(&["--no-t0", "--limit", "1"]), 1);
}

#[test]
fn t_term_by_name() {
    let o = tdli(&["t-term", path(&fixture("chain3.alg")), "m", "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    // ((m ∧ 1) → 0) → (m → 0) = 0 → 0 = 1
    assert_eq!(stdout(&o), "1\n");
    let o = tdli(&["t-term", path(&fixture("chain3.alg")), "m", "0", "z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn iso_without_match_exits_one() {
    let o = tdli(&["iso", path(&fixture("b2.alg")), path(&fixture("chain3.alg"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no isomorphism"));
}
