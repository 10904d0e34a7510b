use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ainfty::ainfty::check_all_higher_associativity;
use ainfty::io::{emit_json, parse_transfer_report, MorphismFile};
use ainfty::{fixtures, properties};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainfty"))
        .args(args)
        .env_remove("AINFTY_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn fixtures_are_listed() {
    let o = run(&["fixtures", "list"]);
    assert_eq!(code(&o), 0);
    let rows = stdout_json(&o);
    assert_eq!(rows.as_array().unwrap().len(), fixtures::NAMES.len());
}

#[test]
fn exported_fixture_matches_the_shipped_file() {
    let o = run(&["fixtures", "export", "exterior-massey"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), std::fs::read_to_string(fixture_file("exterior-massey")).unwrap());
}

#[test]
fn transfer_on_a_zero_differential_commutative_fixture_is_formal() {
    let o = run(&["transfer", "--fixture", "truncated-poly", "--cap", "5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = parse_transfer_report(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(report.formality["formal"], Value::Bool(true));
    assert_eq!(report.oracle_diff.unwrap()["zero"], Value::Bool(true));
}

#[test]
fn transfer_report_is_self_describing() {
    let o = run(&["transfer", "--fixture", "exterior-massey", "--cap", "5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = parse_transfer_report(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(report.cap, 5);
    let minimal = report.minimal.to_algebra(5, None).unwrap();
    assert!(check_all_higher_associativity(&minimal).unwrap().iter().all(|r| r.passed()));
    assert!(report.minimal.operations.contains_key("m3"));
    assert_eq!(report.formality["formal"], Value::Bool(false));
}

#[test]
fn formality_exit_codes() {
    let o = run(&["formality", "--fixture", "exterior-massey", "--cap", "4"]);
    assert_eq!(code(&o), 1);
    let out = stdout_json(&o);
    let witness = &out["formality"]["witness"];
    assert_eq!(witness["arity"], 3);
    assert_eq!(witness["confirmed_by_oracle"], Value::Bool(true));
    assert!(stderr(&o).contains("m'_3("));
    for name in ["trivial", "truncated-poly", "exterior-pair"] {
        let o = run(&["formality", "--fixture", name, "--cap", "4"]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(stdout_json(&o)["formality"]["nonzero_arities"], serde_json::json!([]));
    }
}

#[test]
fn oracle_diff_is_zero_on_every_fixture() {
    for name in fixtures::NAMES {
        let o = run(&["oracle-diff", "--fixture", name, "--cap", "4"]);
        assert_eq!(code(&o), 0, "{name}: {}", stderr(&o));
        let out = stdout_json(&o);
        assert_eq!(out["diff"]["convention"], "alpha bridge");
    }
}

#[test]
fn check_accepts_fixture_files_and_flags_broken_ones() {
    let o = run(&["check", &fixture_file("exterior-massey")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["cap"], 6);

    let dir = tempfile::tempdir().unwrap();
    let mut spec = fixtures::spec_file("upper-triangular").unwrap();
    spec.flags.is_dga = false;
    spec.operations.get_mut("m2").unwrap()[0].output.insert("e12".into(), "1".into());
    let path = write(dir.path(), "broken.json", &emit_json(&spec));
    let o = run(&["check", &path, "--cap", "3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["passed"], Value::Bool(false));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json").display().to_string();
    assert_eq!(code(&run(&["check", &missing])), 2);

    let bad = write(dir.path(), "bad.json", "{\n  \"field\": \"Q\",\n  \"basis\": [\n");
    let o = run(&["check", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let degree = write(
        dir.path(),
        "degree.json",
        r#"{"field": "Q", "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 1}], "operations": {"m2": [{"inputs": ["a", "a"], "output": {"b": "1"}}]}}"#,
    );
    let o = run(&["check", &degree]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("operations.m2[0]"), "{}", stderr(&o));

    assert_eq!(code(&run(&["check", "--fixture", "nope"])), 2);
    assert_eq!(code(&run(&["check", &fixture_file("trivial"), "--fixture", "trivial"])), 2);
    assert_eq!(code(&run(&["check"])), 2);
    assert_eq!(code(&run(&["check", "--fixture", "trivial", "--field", "Fp:4"])), 2);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["transfer", "--fixture", "twisted-ainfty", "--cap", "4", "--report", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn cap_comes_from_flag_then_environment() {
    let env = |cap: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_ainfty")).args(args).env("AINFTY_CAP", cap).output().unwrap()
    };
    let o = env("3", &["check", "--fixture", "exterior-pair"]);
    assert_eq!(stdout_json(&o)["cap"], 3);
    let o = env("3", &["check", "--fixture", "exterior-pair", "--cap", "5"]);
    assert_eq!(stdout_json(&o)["cap"], 5);
    let o = run(&["check", "--fixture", "exterior-pair"]);
    assert_eq!(stdout_json(&o)["cap"], 6);
}

#[test]
fn declared_cap_bounds_the_request() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec = fixtures::spec_file("twisted-ainfty").unwrap();
    spec.cap = Some(4);
    let path = write(dir.path(), "capped.json", &emit_json(&spec));
    let o = run(&["check", &path]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["cap"], 4);
    assert_eq!(code(&run(&["check", &path, "--cap", "5"])), 2);
}

#[test]
fn compose_verifies_the_composite() {
    let dir = tempfile::tempdir().unwrap();
    let chain = properties::random_chain(17, 2, 3).unwrap();
    let f = write(dir.path(), "f.json", &emit_json(&MorphismFile::from_morphism(&chain[0])));
    let g = write(dir.path(), "g.json", &emit_json(&MorphismFile::from_morphism(&chain[1])));
    let o = run(&["compose", &f, &g]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["passed"], Value::Bool(true));
    assert_eq!(code(&run(&["check", &f])), 0);
    // g's target is not f's source
    assert_eq!(code(&run(&["compose", &g, &f])), 2);
}

#[test]
fn property_runs_pass() {
    let o = run(&["props", "--seed", "5", "--cap", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout_json(&o)["seed"], 5);
}
