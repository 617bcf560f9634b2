//! End-to-end tests for the command-line interface.

use std::process::{Command, Output};

fn hesse3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hesse3"))
        .args(args)
        .env_remove("HESSE3_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

#[test]
fn info_reports_invariants_and_point_count() {
    let out = hesse3(&["info", "--field", "p=7", "--curve", "shortw:a=0,b=2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["point_count"], 9);
    assert_eq!(v["field"], "p=7");
    assert_eq!(v["curve"], "shortw:a=0,b=2");
}

#[test]
fn pencil_reports_family_determinant() {
    let out = hesse3(&["pencil", "--field", "p=7", "--curve", "shortw:a=0,b=1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    // t^4 - 108 t reduces to t^4 + 4t
    let det: Vec<&str> = v["family"]["det"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(det, ["0", "4", "0", "0", "1"]);
}

#[test]
fn verify_rejects_characteristic_three() {
    let out = hesse3(&["verify", "--field", "p=3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"], "CharacteristicThree");
}

#[test]
fn verify_passes_and_is_deterministic_across_jobs() {
    let single = hesse3(&["verify", "--field", "p=2", "--jobs", "1"]);
    assert!(single.status.success());
    let v = json_of(&single);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    assert_eq!(v["pairs"], 36);
    let multi = hesse3(&["verify", "--field", "p=2", "--jobs", "3"]);
    assert_eq!(single.stdout, multi.stdout);
}

#[test]
fn output_is_byte_for_byte_deterministic() {
    let a = hesse3(&["torsion", "--field", "p=5", "--curve", "shortw:a=1,b=1"]);
    let b = hesse3(&["torsion", "--field", "p=5", "--curve", "shortw:a=1,b=1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_flag_and_environment_override() {
    let flagged = hesse3(&["info", "--field", "p=5", "--curve", "shortw:a=1,b=1", "--seed", "9"]);
    assert_eq!(json_of(&flagged)["seed"], 9);
    let out = Command::new(env!("CARGO_BIN_EXE_hesse3"))
        .args(["info", "--field", "p=5", "--curve", "shortw:a=1,b=1", "--seed", "9"])
        .env("HESSE3_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], 11);
}

#[test]
fn printed_specs_round_trip() {
    // take the model printed by `fiber` and feed it back through `info`
    let out = hesse3(&[
        "fiber",
        "--field",
        "p=2,deg=2",
        "--curve",
        "ord2:a2=1,1,a6=0,1",
        "--t",
        "1,1",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    let field = v["field"].as_str().unwrap().to_string();
    let model = v["fiber"]["model"].as_str().unwrap().to_string();
    let again = hesse3(&["info", "--field", &field, "--curve", &model]);
    assert!(again.status.success());
    let v2 = json_of(&again);
    assert_eq!(v2["field"].as_str().unwrap(), field);
    assert_eq!(v2["curve"].as_str().unwrap(), model);
}

#[test]
fn pretty_output_carries_the_same_report() {
    let plain = hesse3(&["check", "--field", "p=7", "--curve", "shortw:a=1,b=1", "--other", "shortw:a=2,b=6"]);
    let pretty = hesse3(&[
        "check", "--field", "p=7", "--curve", "shortw:a=1,b=1", "--other", "shortw:a=2,b=6",
        "--pretty",
    ]);
    assert!(plain.status.success() && pretty.status.success());
    assert_ne!(plain.stdout, pretty.stdout);
    assert_eq!(json_of(&plain), json_of(&pretty));
    assert_eq!(json_of(&plain)["verdict"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hesse3(&["bogus"]).status.code(), Some(2));
    assert_eq!(hesse3(&["info", "--field", "p=7"]).status.code(), Some(2));
    assert_eq!(
        hesse3(&["info", "--field", "q=7", "--curve", "shortw:a=0,b=2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hesse3(&["info", "--field", "p=7", "--curve", "weier:a=0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_one_with_error_object() {
    // singular curve
    let out = hesse3(&["info", "--field", "p=5", "--curve", "shortw:a=0,b=0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["error"].is_string());
    // wrong characteristic for the shape
    let out = hesse3(&["info", "--field", "p=7", "--curve", "ord2:a2=1,a6=1"]);
    assert_eq!(out.status.code(), Some(1));
}
