use std::path::PathBuf;
use std::process::{Command, Output};

use motivic_core::json::{class_to_json, datum_from_json, generator_from_json};
use motivic_core::{catalog, MuClass};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn motivic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(args)
        .env_remove("MOTIVIC_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn vanishing_of_cross() {
    let out = motivic(&["vanishing", &path("xy-datum.json")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["phi"], class_to_json(&MuClass::lefschetz()));
    assert_eq!(v["phi_regular"], class_to_json(&MuClass::zero()));
}

#[test]
fn chi_of_cube_vanishing_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let phi = dir.path().join("phi.json");
    let out = motivic(&["vanishing", &path("x3-datum.json"), "--out", phi.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let out = motivic(&["realize", "--chi-c", phi.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out), serde_json::json!(-2));
}

#[test]
fn zero_orbit_is_a_validation_error() {
    let out = motivic(&["normalize", &path("garbage.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "validation");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = motivic(&["normalize", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "parse");
    assert_eq!(motivic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(motivic(&["realize", &path("one.json")]).status.code(), Some(2));
}

#[test]
fn undefined_e_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fer.json");
    std::fs::write(&f, r#"{"terms":[{"coeff":{"0":1},"factors":[{"fer":[2,3]}]}]}"#).unwrap();
    let out = motivic(&["realize", "--e-poly", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"], "realization");
    assert!(v["detail"].as_str().unwrap().contains("fer(2,3)"));
}

#[test]
fn e_polynomial_of_torus() {
    let out = motivic(&["realize", "--e-poly", &path("torus.json")]);
    assert_eq!(json_of(&out), serde_json::json!({"epoly": {"(1,1)": 1, "(0,0)": -1}}));
}

#[test]
fn convolve_and_pretty() {
    let out = motivic(&["--pretty", "convolve", &path("orb2.json"), &path("orb2.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(L - 1) + 2*[mu_2]\n");
    let out = motivic(&["--pretty", "vanishing", &path("x2-datum.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "phi = 1 - [mu_2]\nphi_regular = 0\n");
}

#[test]
fn assoc_check_shape() {
    let out = motivic(&["assoc-check", &path("orb2.json"), &path("orb3.json"), &path("torus.json")]);
    assert_eq!(json_of(&out), serde_json::json!({"symbolic": true, "chi_consistent": true}));
    let out = motivic(&["assoc-check", &path("orb2.json"), &path("orb3.json"), &path("orb2.json")]);
    assert_eq!(json_of(&out)["chi_consistent"], true);
}

#[test]
fn ts_check_on_squares() {
    let g = path("x2.generator.json");
    let out = motivic(&["ts-check", &g, &g, &path("xy.generator.json")]);
    let v = json_of(&out);
    assert_eq!(v["equal"], true);
    assert_eq!(v["lhs"]["support"][0]["point"], "0");
    assert_eq!(v["lhs"]["support"][0]["class"], class_to_json(&MuClass::lefschetz()));
}

#[test]
fn measures() {
    let out = motivic(&["measure", &path("lefschetz-line.presentation.json")]);
    assert_eq!(json_of(&out), serde_json::json!({"support": []}));
    let out = motivic(&["--pretty", "measure", &path("blowup.presentation.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{0 -> L^2 + L}\n");
    let out = motivic(&["realize", "--chi-c", &path("x2.presentation.json")]);
    assert_eq!(out.status.code(), Some(2), "a presentation is not a class");
}

#[test]
fn star_over_the_line() {
    let out = motivic(&["--pretty", "star-a1", &path("orb2-at-0.a1.json"), &path("unit-at-1.a1.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{1 -> [mu_2]}\n");
}

#[test]
fn oracle_and_budget() {
    let out = motivic(&["oracle", "--fer", "2", "2", "--q", "13"]);
    assert_eq!(json_of(&out), serde_json::json!(8));
    let out = Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(["oracle", "--fer", "2", "2", "--q", "13"])
        .env("MOTIVIC_ORACLE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "oracle");
}

#[test]
fn output_is_deterministic() {
    let args = ["ts-check", &path("x2.generator.json"), &path("x2.generator.json"), &path("xy.generator.json")];
    let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    assert_eq!(motivic(&args).stdout, motivic(&args).stdout);
}

#[test]
fn shipped_data_matches_catalog() {
    let read = |n: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(data(n)).unwrap()).unwrap() };
    assert_eq!(datum_from_json(&read("xy-datum.json")).unwrap(), catalog::cross_datum());
    assert_eq!(datum_from_json(&read("x2-datum.json")).unwrap(), catalog::power_datum(2));
    assert_eq!(datum_from_json(&read("x3-datum.json")).unwrap(), catalog::power_datum(3));
    assert_eq!(generator_from_json(&read("xy.generator.json")).unwrap(), catalog::cross_generator());
}
