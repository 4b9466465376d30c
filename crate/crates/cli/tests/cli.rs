use std::io::Write;
use std::process::{Command, Output};

fn ncgalois(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgalois")).args(args).env_remove("NCGALOIS_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn normal_forms() {
    let o = ncgalois(&["nf", "--algebra", "quantum_plane", "x*y - p*y*x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    assert_eq!(stdout(&ncgalois(&["nf", "--algebra", "gl2", "1"])).trim(), "1");
    // Plane letters come first in normal words.
    assert_eq!(stdout(&ncgalois(&["nf", "--algebra", "frame_bundle", "a*x"])).trim(), "p^-1*q^-1*x*a");
}

#[test]
fn nf_errors_exit_two_with_a_location() {
    let o = ncgalois(&["nf", "--algebra", "gl2", "a*z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:3"), "{}", stderr(&o));
    let o = ncgalois(&["nf", "--algebra", "nope", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(ncgalois(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ncgalois(&["check", "--backend", "float"]).status.code(), Some(2));
    assert_eq!(ncgalois(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn erratum_suite_observes_the_expected_failure() {
    let o = ncgalois(&["check", "--suite", "erratum", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "erratum");
    let statuses: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert!(statuses.contains(&"expected-failure-observed"));
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn json_report_follows_the_schema() {
    let o = ncgalois(&["check", "--suite", "hopf", "--degree", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["degree"], 2);
    assert_eq!(v["params"]["seed"], 0);
    assert_eq!(v["params"]["backend"], "symbolic");
    for c in v["checks"].as_array().unwrap() {
        for key in ["id", "anchor", "status", "ms"] {
            assert!(c.get(key).is_some(), "{c}");
        }
    }
}

#[test]
fn text_and_json_list_the_same_checks() {
    let args = ["check", "--suite", "tangent", "--degree", "2"];
    let text = stdout(&ncgalois(&args));
    let json = stdout(&ncgalois(&[&args[..], &["--format", "json"]].concat()));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert!(text.contains(c["id"].as_str().unwrap()));
    }
}

#[test]
fn numeric_hopf_suite_passes() {
    let o = ncgalois(&["check", "--suite", "hopf", "--backend", "numeric", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn reports_are_deterministic() {
    let args = ["check", "--suite", "smash", "--degree", "2", "--seed", "5", "--no-timings", "--format", "json"];
    let a = ncgalois(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_ncgalois")).args(args).env("NCGALOIS_JOBS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_jobs_variable_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_ncgalois"))
        .args(["check", "--suite", "relations"])
        .env("NCGALOIS_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn loaded_plane_matches_the_builtin() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "algebra my_plane (p) {{\n    generators: x, y;\n    relations: x*y = p*y*x;\n}}").unwrap();
    let path = f.path().to_str().unwrap();
    for e in ["y*x*y*x", "x*x*y - y*x*x"] {
        let mine = ncgalois(&["--load", path, "nf", "--algebra", "my_plane", e]);
        let builtin = ncgalois(&["nf", "--algebra", "quantum_plane", e]);
        assert_eq!(mine.status.code(), Some(0), "{}", stderr(&mine));
        assert_eq!(stdout(&mine), stdout(&builtin));
    }
    let o = ncgalois(&["load", path, "--confluence", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("my_plane: 0 ambiguities, 0 unresolved"), "{}", stdout(&o));
}

#[test]
fn loaded_inconsistent_calculus_is_reported() {
    // The y*xi rule does not fit the others: the overlap x*y*xi splits.
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        "algebra other_calculus (p, q) {{
    generators: x, y, xi, eta;
    grade: xi = 1, eta = 1;
    relations: x*y = p*y*x,
        x*xi = q*xi*x,
        x*eta = p*eta*x,
        y*xi = (p*q)^-1*xi*y + (q^-1 - p^-1)*eta*x,
        y*eta = q*eta*y;
}}"
    )
    .unwrap();
    let o = ncgalois(&["load", f.path().to_str().unwrap(), "--confluence", "4"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("other_calculus: 2 ambiguities, 1 unresolved"), "{out}");
    assert!(out.contains("x*y*xi:"), "{out}");
}

#[test]
fn malformed_file_reports_its_location() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "algebra broken {{\n    generators: x;\n    relations: x*w = 1;\n}}").unwrap();
    let o = ncgalois(&["load", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3:18"), "{}", stderr(&o));
}

#[test]
fn print_and_list() {
    let o = ncgalois(&["print", "quantum_plane"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x*y = p*y*x"), "{}", stdout(&o));
    let list = stdout(&ncgalois(&["list"]));
    for item in ["algebra frame_bundle", "morphism coproduct", "action frame_action"] {
        assert!(list.contains(item), "{list}");
    }
}
