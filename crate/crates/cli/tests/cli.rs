use std::process::{Command, Output};

use serde_json::{json, Value};

fn qrook(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrook"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qrook_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = qrook(&all);
    let code = out.status.code().unwrap();
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, value)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn info_reports_sequence_and_canonical_form() {
    let (code, v) = qrook_json(&["info", "--diagram", "4,3,3,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["version"], 1);
    assert_eq!(v["command"], "info");
    let r = &v["result"];
    assert_eq!(r["sequence"], json!([1, 2, 3, 4, 3]));
    assert_eq!(r["degree"], 4);
    assert_eq!(r["size"], 13);
    assert_eq!(r["canonical"], json!([4, 3, 3, 2, 1]));

    let (_, v) = qrook_json(&["info", "--diagram", "5,3,3,2"]);
    assert_eq!(v["result"]["canonical"], json!([4, 3, 3, 2, 1]));
    assert_eq!(v["result"]["symmetric"], false);
}

#[test]
fn info_rejects_bad_sequence() {
    let out = qrook(&["info", "--sequence", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("d_1 must equal 1"));
}

#[test]
fn info_text_has_rendering() {
    let out = qrook(&["info", "--diagram", "3,3,3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("symmetric  true"));
    assert!(text.contains("###\n###\n###\n"));
}

#[test]
fn qrook_polynomial_json() {
    let (code, v) = qrook_json(&["qrook", "--diagram", "2,2", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"],
        json!({"terms": [{"exp": 0, "coeff": "1"}, {"exp": 1, "coeff": "1"}]})
    );
}

#[test]
fn qrook_cross_checks_methods() {
    let (code, v) = qrook_json(&[
        "qrook",
        "--sequence",
        "1,2,1",
        "--r",
        "2",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    let (_, direct) = qrook_json(&["qrook", "--diagram", "2,2", "--r", "2"]);
    assert_eq!(v["result"], direct["result"]);
}

#[test]
fn qrook_beyond_degree_is_zero() {
    let (code, v) = qrook_json(&["qrook", "--diagram", "2,2", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!({"terms": []}));
}

#[test]
fn qrook_symmetric_and_alternating() {
    let (code, _) = qrook_json(&[
        "qrook",
        "--diagram",
        "3,3,3",
        "--kind",
        "sym",
        "--t",
        "1",
        "--s",
        "1",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    let (code, _) = qrook_json(&[
        "qrook",
        "--diagram",
        "3,3,3",
        "--kind",
        "alt",
        "--r",
        "2",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    let out = qrook(&["qrook", "--diagram", "3,3,3", "--kind", "sym", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rankdist_with_oracle() {
    let (code, v) = qrook_json(&[
        "rankdist",
        "--diagram",
        "2,2",
        "--kind",
        "general",
        "--q",
        "2",
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"], json!(["1", "9", "6"]));
    assert_eq!(v["result"]["oracle_agrees"], true);
}

#[test]
fn rankdist_symmetric_symbolic() {
    let (code, v) = qrook_json(&["rankdist", "--diagram", "2,1", "--kind", "sym"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["ranks"][2],
        json!({"terms": [{"exp": 1, "coeff": "-1"}, {"exp": 2, "coeff": "1"}]})
    );
}

#[test]
fn rankdist_rejects_asymmetric_alternating() {
    let out = qrook(&["rankdist", "--diagram", "3,1", "--kind", "alt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not symmetric"));
}

#[test]
fn rankdist_oracle_needs_q() {
    assert_eq!(
        qrook(&["rankdist", "--diagram", "2,2", "--oracle"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn rankdist_budget_exceeded() {
    let out = Command::new(env!("CARGO_BIN_EXE_qrook"))
        .args(["rankdist", "--diagram", "3,3,3", "--q", "2", "--oracle"])
        .env("QROOK_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_qrook"))
        .args(["rankdist", "--diagram", "2,2", "--q", "2", "--oracle"])
        .env("QROOK_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classes_of_small_boards() {
    let (code, v) = qrook_json(&["classes", "--rows", "2", "--cols", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["diagrams"], 6);
    let total: usize = v["result"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["members"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, 6);

    let (_, v) = qrook_json(&["classes", "--rows", "3", "--cols", "3"]);
    let class = v["result"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["sequence"] == json!([1, 2, 1]))
        .unwrap()
        .clone();
    let members = class["members"].as_array().unwrap();
    assert!(members.contains(&json!([2, 2])));
    assert!(members.contains(&json!([3, 1])));

    let (_, v) = qrook_json(&["classes", "--rows", "0", "--cols", "0"]);
    assert_eq!(
        v["result"]["classes"],
        json!([{"sequence": [], "members": [[]], "qrook": [{"terms": [{"exp": 0, "coeff": "1"}]}]}])
    );
}

#[test]
fn verify_passes_on_small_board() {
    let (code, v) = qrook_json(&[
        "verify", "--check", "all", "--rows", "4", "--cols", "4", "--fields", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
    let (code, v) = qrook_json(&[
        "verify", "--check", "altsym", "--rows", "5", "--cols", "5", "--fields", "2,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["reports"][0]["check"], "altsym");
}

#[test]
fn verify_reports_failing_closed_form() {
    let (code, v) = qrook_json(&[
        "verify", "--check", "trailing", "--rows", "5", "--cols", "5",
    ]);
    assert_eq!(code, 1);
    let failures = v["result"]["reports"][0]["failures"].as_array().unwrap();
    assert!(failures
        .iter()
        .any(|f| f["input"] == "[5,4,2,2,1], alternating 2r = 2"));
    let (code, _) = qrook_json(&[
        "verify",
        "--check",
        "trailing-corrected",
        "--rows",
        "5",
        "--cols",
        "5",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn verify_unknown_check() {
    assert_eq!(
        qrook(&["verify", "--check", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qrook(&["info"]).status.code(), Some(2));
    assert_eq!(
        qrook(&["info", "--diagram", "2,2", "--sequence", "1,2,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qrook(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qrook(&["--help"]).status.code(), Some(0));
}
