use std::process::{Command, Output};

use serde_json::Value;

use vvmf::serial::{operator_from_json, operator_to_json, series_from_json, series_to_json};

fn vvmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vvmf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = vvmf(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn forms_e4() {
    let v = json(&["forms", "--series", "E4", "--precision", "10"]);
    let e = &v["expansion"];
    assert_eq!(e["precision"], 10);
    assert_eq!(e["coeffs"][1], "240");
    assert_eq!(e["coeffs"][10], "272160");
    let f = series_from_json(e).unwrap();
    assert_eq!(&series_to_json(&f), e);
}

#[test]
fn eta_has_fractional_exponent() {
    let v = json(&["forms", "--series", "eta^1", "--precision", "4"]);
    assert_eq!(v["expansion"]["base_exponent"], "1/24");
    assert_eq!(v["weight"], "1/2");
}

#[test]
fn construct_two_dimensional_operator() {
    let v = json(&["mmde", "construct", "--roots", "1/12,5/12"]);
    assert_eq!(v["operator"]["weight"], "2");
    assert_eq!(v["operator"]["order"], 2);
    let (op, cusp) = operator_from_json(&v["operator"]).unwrap();
    assert_eq!(operator_to_json(&op, cusp.as_ref()), v["operator"]);
}

#[test]
fn solve_reports_weight_and_solutions() {
    let v = json(&["mmde", "solve", "--roots", "1/12,5/12", "--precision", "8"]);
    assert_eq!(v["weight"], "2");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(v["solutions"][0]["base_exponent"], "1/12");
    assert_eq!(v["t_angles"], serde_json::json!(["1/12", "5/12"]));
}

#[test]
fn classify_dimension_five_cyclic() {
    let v = json(&[
        "classify", "--dim", "5", "--r", "1/12,2/12,3/12,4/12,5/12", "--eta-weight", "0",
        "--chi", "0", "--epsilon", "1", "--assert-t-determined",
    ]);
    assert_eq!(v["k0"], "-1");
    assert_eq!(v["cyclic"], true);
    assert_eq!(v["offsets"], serde_json::json!([0, 1, 2, 3, 4]));
    assert_eq!(v["numerator"], "1+t^2+t^4+t^6+t^8");
    assert!(v["assumptions"].as_array().unwrap().len() >= 3);
}

#[test]
fn classify_dimension_four_with_negative_epsilon() {
    let v = json(&[
        "classify", "--dim", "4", "--r", "1/48,5/48,9/48,17/48", "--epsilon", "-1",
    ]);
    assert_eq!(v["resolved"], true);
    assert_eq!(v["offsets"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn wronskian_equality_and_strict_case() {
    let v = json(&["wronskian", "--roots", "1/12,5/12", "--precision", "12"]);
    assert_eq!(v["g_weight"], "0");
    assert_eq!(v["equality"], true);
    let w = json(&["wronskian", "--roots", "1/12,5/12", "--precision", "12", "--times-eisenstein", "4"]);
    assert_eq!(w["g_weight"], "8");
    assert_eq!(w["equality"], false);
}

#[test]
fn hp_dims() {
    let v = json(&["hp", "--k0", "-2", "--offsets", "0,1,1,2"]);
    assert_eq!(v["numerator"], "1+2t^2+t^4");
    assert_eq!(v["dims"]["-2"], 1);
    assert_eq!(v["dims"]["10"], 5);
}

#[test]
fn appendix_and_structure_reports() {
    let v = json(&["appendix", "--precision", "12"]);
    assert_eq!(v["family_weight"], "0");
    assert_eq!(v["passed"], true);
    let s = json(&["verify-structure", "--dim", "3", "--r", "0,1/3,2/3", "--precision", "30"]);
    assert_eq!(s["certified"], true);
    assert_eq!(s["structure"], "cyclic");
}

#[test]
fn seeded_round_trip() {
    let a = vvmf(&["round-trip", "--seed", "11", "--cases", "6", "--precision", "10"]);
    let b = vvmf(&["round-trip", "--seed", "11", "--cases", "6", "--precision", "10"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_deterministic_in_both_formats() {
    for fmt in ["json", "text"] {
        let args = ["mmde", "solve", "--roots", "1/5,2/3,1/4", "--precision", "6", "--format", fmt];
        assert_eq!(vvmf(&args).stdout, vvmf(&args).stdout);
    }
    let text = vvmf(&["forms", "--series", "Delta", "--precision", "2", "--format", "text"]);
    assert_eq!(
        String::from_utf8(text.stdout).unwrap(),
        "series: Delta\nweight: 12\nexpansion: q - 24*q^(2) + 252*q^(3) + O(q^(4))\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(vvmf(&["mmde", "solve", "--roots", "1/3,4/3"]).status.code(), Some(2));
    assert_eq!(
        vvmf(&["classify", "--dim", "4", "--r", "0,1/7,2/7,3/7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        vvmf(&["mmde", "construct", "--roots", "0,1/7,2/7,3/7,4/7,5/7"]).status.code(),
        Some(3)
    );
    assert_eq!(vvmf(&["forms", "--series", "X9"]).status.code(), Some(2));
    assert_eq!(vvmf(&["no-such-command"]).status.code(), Some(2));
    let out = vvmf(&["mmde", "solve", "--roots", "1/3,4/3"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("differ by an integer"));
}
