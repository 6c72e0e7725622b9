use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const STEMS: [&str; 10] = [
    "trivial",
    "group-algebra-z2",
    "group-algebra-z3",
    "group-algebra-s3",
    "function-swap",
    "function-klein",
    "function-klein-torsion",
    "matrix-pauli",
    "truncated-sign",
    "truncated-trivial",
];

fn instance(stem: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(format!("{stem}.json"))
}

fn hhzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhzero")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

/// Writes a modified copy of a golden instance.
fn corrupted(stem: &str, edit: impl FnOnce(&mut Value)) -> tempfile::NamedTempFile {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(instance(stem)).unwrap()).unwrap();
    edit(&mut v);
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), v.to_string()).unwrap();
    f
}

#[test]
fn every_golden_instance_validates_and_verifies() {
    for stem in STEMS {
        let path = instance(stem);
        let p = path.to_str().unwrap();
        for cmd in [&["validate", p][..], &["verify", p], &["characters", "--check", p], &["structure", p]] {
            let out = hhzero(cmd);
            assert_eq!(code(&out), 0, "{cmd:?}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&hhzero(&["--help"])), 0);
    assert_eq!(code(&hhzero(&["--version"])), 0);
    assert_eq!(code(&hhzero(&["hh0", "--help"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&hhzero(&[])), 1);
    assert_eq!(code(&hhzero(&["frobnicate"])), 1);
    assert_eq!(code(&hhzero(&["hh0", "/nonexistent/instance.json"])), 1);
    assert_eq!(code(&hhzero(&["--field", "gf:100", "hh0", instance("trivial").to_str().unwrap()])), 1);
    assert_eq!(code(&hhzero(&["build", "group-algebra", "--group", "dihedral:4"])), 1);

    let bad = corrupted("group-algebra-z2", |v| v["algebra"]["trace"][0] = "1/0".into());
    let out = hhzero(&["hh0", bad.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebra.trace[0]"));

    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), "{ \"format_version\": 1,\n  \"field\": ").unwrap();
    let out = hhzero(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn invalid_bundles_exit_three() {
    // c_{1,2} negated in K[Z/3] breaks the cocycle identity
    let bad = corrupted("group-algebra-z3", |v| v["action"]["c"][1][2] = serde_json::json!(["-1", "0", "0"]));
    let p = bad.path().to_str().unwrap();
    for cmd in ["validate", "hh0", "verify"] {
        assert_eq!(code(&hhzero(&[cmd, p])), 3, "{cmd}");
    }
    let out = hhzero(&["--json", "validate", p]);
    let report = json(&out);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"cocycle.associativity"), "{failed:?}");

    // a degenerate trace leaves no copairing, even when validation is skipped
    let degenerate = corrupted("group-algebra-z2", |v| v["algebra"]["trace"] = serde_json::json!(["1", "1"]));
    assert_eq!(code(&hhzero(&["--skip-validate", "hh0", degenerate.path().to_str().unwrap()])), 3);
}

#[test]
fn axiom_failures_exit_two() {
    let bad = corrupted("group-algebra-z2", |v| v["action"]["rho"][1] = serde_json::json!([["1", "1"], ["0", "1"]]));
    let p = bad.path().to_str().unwrap();
    assert_eq!(code(&hhzero(&["--skip-validate", "verify", p])), 2);
    assert_eq!(code(&hhzero(&["--skip-validate", "characters", "--check", p])), 2);
}

#[test]
fn build_reproduces_golden_files() {
    let cases: [(&str, &[&str]); 10] = [
        ("trivial", &["group-algebra", "--group", "trivial"]),
        ("group-algebra-z2", &["group-algebra", "--group", "cyclic:2"]),
        ("group-algebra-z3", &["group-algebra", "--group", "cyclic:3"]),
        ("group-algebra-s3", &["group-algebra", "--group", "symmetric:3"]),
        ("function-swap", &["function-algebra", "--preset", "swap"]),
        ("function-klein", &["function-algebra", "--preset", "klein"]),
        ("function-klein-torsion", &["function-algebra", "--preset", "klein-torsion"]),
        ("matrix-pauli", &["matrix-projective", "--preset", "pauli"]),
        ("truncated-sign", &["truncated-polynomial"]),
        ("truncated-trivial", &["truncated-polynomial", "--trivial-action"]),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (stem, args) in cases {
        let target = dir.path().join(format!("{stem}.json"));
        let mut full = vec!["build"];
        full.extend_from_slice(args);
        full.extend(["--out", target.to_str().unwrap()]);
        let out = hhzero(&full);
        assert_eq!(code(&out), 0, "{stem}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(
            std::fs::read_to_string(&target).unwrap(),
            std::fs::read_to_string(instance(stem)).unwrap(),
            "{stem}"
        );
    }
}

#[test]
fn truncated_polynomial_refuses_characteristic_two() {
    let out = hhzero(&["--field", "gf:2", "build", "truncated-polynomial"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn json_reports_are_deterministic() {
    for stem in ["group-algebra-s3", "function-klein-torsion", "truncated-sign"] {
        let path = instance(stem);
        let p = path.to_str().unwrap();
        for cmd in [&["--json", "--seed", "17", "characters", "--check", p][..], &["--json", "verify", p]] {
            let (a, b) = (hhzero(cmd), hhzero(cmd));
            assert_eq!(code(&a), 0);
            assert_eq!(a.stdout, b.stdout, "{stem} {cmd:?}");
            assert!(!stdout(&a).contains("timing_us"));
        }
    }
}

#[test]
fn timings_only_when_requested() {
    let path = instance("group-algebra-z2");
    let out = hhzero(&["--json", "--timings", "verify", path.to_str().unwrap()]);
    assert!(stdout(&out).contains("timing_us"));
}

#[test]
fn dims_agree_over_rationals_and_gf101() {
    for stem in STEMS {
        let path = instance(stem);
        let p = path.to_str().unwrap();
        let q = json(&hhzero(&["--json", "--field", "q", "hh0", p]));
        let f = json(&hhzero(&["--json", "--field", "gf:101", "hh0", p]));
        assert_eq!(q["dims"], f["dims"], "{stem}");
        assert_eq!(f["field"], "gf:101", "{stem}");
    }
}

#[test]
fn characters_of_known_instances() {
    let out = json(&hhzero(&["--json", "characters", instance("trivial").to_str().unwrap()]));
    assert_eq!(out["entries"], serde_json::json!([{ "g": 0, "h": 0, "value": "1" }]));

    // discrete torsion gives χ(a, b) = -1
    let out = json(&hhzero(&["--json", "characters", instance("function-klein-torsion").to_str().unwrap()]));
    let entry = out["entries"].as_array().unwrap().iter().find(|e| e["g"] == 1 && e["h"] == 2).unwrap();
    assert_eq!(entry["value"], "-1");
}

#[test]
fn hh0_text_output() {
    let out = hhzero(&["hh0", "--bases", instance("group-algebra-s3").to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("HH0_0: dim 3"), "{text}");
    assert!(text.contains("total 18"), "{text}");
}
