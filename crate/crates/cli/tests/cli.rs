use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lie2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie2")).args(args).output().expect("spawn lie2")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_fixture(dir: &Path, spec: &str) -> PathBuf {
    let path = dir.join(format!("{}.lie", spec.replace(':', "_")));
    let out = lie2(&["fixture", spec, path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f6 = write_fixture(dir.path(), "F6");
    assert_eq!(code(&lie2(&["verify", f6.to_str().unwrap()])), 0);

    let json = lie2(&["verify", f6.to_str().unwrap(), "--report", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["clean"], true);

    // a bracket with no Jacobi-compatible completion
    let bad = dir.path().join("bad.lie");
    std::fs::write(
        &bad,
        "format_version 1\nname bad\ndim 3\nfield_degree 1\nbracket 0 1 = 0 0 1\nbracket 1 2 = 1 0 0\nbracket 0 2 = 0 0 1\nend\n",
    )
    .unwrap();
    let out = lie2(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));

    let missing = dir.path().join("missing.lie");
    assert_eq!(code(&lie2(&["verify", missing.to_str().unwrap()])), 2);
}

#[test]
fn malformed_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let diag = dir.path().join("diag.lie");
    std::fs::write(&diag, "format_version 1\nname x\ndim 2\nfield_degree 1\nbracket 1 1 = 1 0\nend\n").unwrap();
    let out = lie2(&["verify", diag.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("diagonal"));

    let version = dir.path().join("v.lie");
    std::fs::write(&version, "format_version 999\nname x\ndim 1\nfield_degree 1\nend\n").unwrap();
    let out = lie2(&["verify", version.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("999"));
}

#[test]
fn screen_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, expected) in [("F6", 10), ("U1", 10), ("F7", 10), ("torus:3", 20), ("witt:2", 20), ("gl:2", 10)] {
        let path = write_fixture(dir.path(), spec);
        let out = lie2(&["screen", path.to_str().unwrap()]);
        assert_eq!(code(&out), expected, "{spec}: {}", stdout(&out));
    }
}

#[test]
fn simple_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f6 = write_fixture(dir.path(), "F6");
    let out = lie2(&["simple", f6.to_str().unwrap()]);
    assert_eq!(code(&out), 10);
    assert!(stdout(&out).contains("counterexample"));
    let sl3 = write_fixture(dir.path(), "sl:3");
    assert_eq!(code(&lie2(&["simple", sl3.to_str().unwrap()])), 0);
    assert_eq!(code(&lie2(&["simple", sl3.to_str().unwrap(), "--budget", "4"])), 20);
}

#[test]
fn decompose_reports_class() {
    let dir = tempfile::tempdir().unwrap();
    let f6 = write_fixture(dir.path(), "F6");
    let out = stdout(&lie2(&["decompose", f6.to_str().unwrap()]));
    assert!(out.contains("torus 3"), "{out}");
    assert!(out.contains("class Delta1"), "{out}");
    assert!(out.contains("triangulable true"), "{out}");

    let gl2 = write_fixture(dir.path(), "gl:2");
    let out = stdout(&lie2(&["decompose", gl2.to_str().unwrap(), "--field-degree", "2", "--torus", "greedy"]));
    assert!(out.contains("field_degree 2"), "{out}");
    assert!(out.contains("cartan 2"), "{out}");
}

#[test]
fn rank_per_field_degree() {
    let dir = tempfile::tempdir().unwrap();
    let gl2 = write_fixture(dir.path(), "gl:2");
    let out = lie2(&["rank", gl2.to_str().unwrap(), "--max-field-degree", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("field_degree 1\trank 2"), "{text}");
    assert!(text.contains("field_degree 2\trank 2"), "{text}");
    assert!(text.contains("rank unchanged for 1->2"), "{text}");
}

#[test]
fn unknown_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = lie2(&["fixture", "nope", dir.path().join("x.lie").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn paper_suite_is_deterministic() {
    let a = lie2(&["paper-suite", "--seed", "11"]);
    let b = lie2(&["paper-suite", "--seed", "11"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().last().unwrap().ends_with("fail=0"));
}

#[test]
fn paper_suite_from_directory() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["F6", "U1", "torus:2"] {
        write_fixture(dir.path(), spec);
    }
    let out = lie2(&["paper-suite", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["F6\t", "U1\t", "torus2\t"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}: {text}");
    }
}

#[test]
fn paper_suite_flags_contradictions() {
    // a 2-map that breaks the ad-square axiom: the screen still runs but the
    // axiom check fails
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lie");
    std::fs::write(
        &bad,
        "format_version 1\nname bad\ndim 3\nfield_degree 1\nbracket 0 1 = 0 0 1\nsquare 0 = 0 1 0\nend\n",
    )
    .unwrap();
    let out = lie2(&["paper-suite", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}
