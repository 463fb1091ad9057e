use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn icat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icat"))
        .args(args)
        .env_remove("ICAT_FIELD")
        .output()
        .expect("run icat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passes_on_every_fixture() {
    for name in [
        "f1_unit.json",
        "f2_two_points.json",
        "f3_poset.json",
        "f4_group_algebra.json",
        "f5_sweedler.json",
        "f6_hopf_galois.json",
        "f7_matrix_coalgebra.json",
    ] {
        let o = icat(&["verify", fixture(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn every_subcommand_on_the_fixtures() {
    let f3 = fixture("f3_poset.json");
    let f3 = f3.to_str().unwrap();
    let f5 = fixture("f5_sweedler.json");
    let f5 = f5.to_str().unwrap();
    let f6 = fixture("f6_hopf_galois.json");
    let f6 = f6.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", f3, "--target", "ceiling"],
        vec!["cotensor", f3, "A", "A"],
        vec!["kleisli", f3, "ceiling"],
        vec!["cokleisli", f3, "mate", "--adjunction", "floor_ceiling", "--monad", "ceiling"],
        vec!["opkleisli", f3, "identity"],
        vec!["adjoint-check", f3, "kleisli"],
        vec!["theta", f3, "ceiling", "--values", "0,1"],
        vec!["oracle-compare", f3, "ceiling_classical"],
        vec!["sweedler", f5, "g"],
        vec!["twist", f5, "kleisli_g"],
        vec!["hopf-galois", f6, "H_over_k", "--x", "0,1", "--m", "0,1", "--u", "0,1"],
        vec!["run", f5, "twist"],
    ];
    for args in runs {
        let o = icat(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).contains("PASS"));
    }
}

#[test]
fn json_report_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kleisli.json");
    let f3 = fixture("f3_poset.json");
    let o = icat(&[
        "--report",
        "json",
        "--out",
        out.to_str().unwrap(),
        "kleisli",
        f3.to_str().unwrap(),
        "ceiling",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["report"]["passed"], Value::Bool(true));
    assert!(report.get("output").is_none());
    // the written structure is itself a valid document
    let o = icat(&["verify", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["internal_categories"]["ceiling_kleisli"]["unit"].as_array().unwrap().len(), 4);
}

#[test]
fn reports_are_byte_identical() {
    let f5 = fixture("f5_sweedler.json");
    let a = icat(&["--report", "json", "twist", f5.to_str().unwrap(), "kleisli_g"]);
    let b = icat(&["--report", "json", "twist", f5.to_str().unwrap(), "kleisli_g"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn law_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"comonoids": {"C": {"delta": [[1], [0], [0], [0]], "counit": [[2, 0]]}}}"#,
    )
    .unwrap();
    // shape error while building the comonoid is malformed input
    assert_eq!(icat(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&path, r#"{"comonoids": {"C": {"delta": [[1]], "counit": [[2]]}}}"#).unwrap();
    let o = icat(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\n  \"field\": \"Q\",\n  oops\n}").unwrap();
    let o = icat(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    fs::write(&path, r#"{"comonoids": {"C": {"delta": [["1/0"]], "counit": [[1]]}}}"#).unwrap();
    assert_eq!(icat(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
    let f3 = fixture("f3_poset.json");
    assert_eq!(icat(&["kleisli", f3.to_str().unwrap(), "nope"]).status.code(), Some(2));
    assert_eq!(icat(&["verify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(icat(&["--field", "F4", "verify", f3.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn field_from_environment() {
    let f5 = fixture("f5_sweedler.json");
    let o = Command::new(env!("CARGO_BIN_EXE_icat"))
        .args(["sweedler", f5.to_str().unwrap(), "g"])
        .env("ICAT_FIELD", "F3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_icat"))
        .args(["verify", f5.to_str().unwrap()])
        .env("ICAT_FIELD", "R")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fixture_printing() {
    let o = icat(&["fixture", "F3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["internal_categories"]["poset"].is_object());
    assert_eq!(icat(&["fixture", "F9"]).status.code(), Some(2));
}
