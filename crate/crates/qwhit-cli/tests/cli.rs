//! End-to-end tests of the qwhit binary: output schemas, exit codes, and
//! determinism of the verification reports.

use std::process::{Command, Output};

use qwhittaker::characters::char_gz;
use qwhittaker::whittaker::{psi_direct, psi_tilde, WhittakerValue};
use serde_json::Value;

fn qwhit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwhit"))
        .args(args)
        .output()
        .expect("spawn qwhit")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn whittaker_eval_matches_library_values() {
    let out = qwhit(&["whittaker", "eval", "-n", "2", "-p", "0,1"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["p"], serde_json::json!([0, 1]));
    assert_eq!(doc["psi"], psi_direct(&[0, 1]).to_json());
    assert_eq!(doc["psi_tilde"], psi_tilde(&[0, 1]).to_json());

    let back = WhittakerValue::from_json(2, &doc["psi"]).expect("round trip");
    assert_eq!(back, psi_direct(&[0, 1]));
}

#[test]
fn whittaker_eval_vanishes_off_the_cone() {
    let out = qwhit(&["whittaker", "eval", "-n", "2", "-p", "1,0"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["psi"], serde_json::json!([]));
}

#[test]
fn whittaker_eval_rank_one_is_a_monomial() {
    let out = qwhit(&["whittaker", "eval", "-n", "1", "-p", "3"]);
    let doc = stdout_json(&out);
    let terms = doc["psi"].as_array().expect("array");
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["z"], serde_json::json!([3]));
    assert_eq!(terms[0]["coeff"]["num"], "1");
    assert_eq!(terms[0]["coeff"]["den"], "1");
}

#[test]
fn char_eval_matches_library_values() {
    let out = qwhit(&["char", "eval", "-n", "3", "-p", "0,1,2"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["char"], char_gz(&[0, 1, 2]).to_json());

    let out = qwhit(&["char", "eval", "-n", "2", "-p", "0,0"]);
    let doc = stdout_json(&out);
    let terms = doc["char"].as_array().expect("array");
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["z"], serde_json::json!([0, 0]));

    let out = qwhit(&["char", "eval", "-n", "2", "-p", "1,0"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["char"], serde_json::json!([]));
}

#[test]
fn window_sweep_emits_one_object_per_point() {
    let out = qwhit(&["whittaker", "eval", "-n", "1", "--window", "-1..1"]);
    let doc = stdout_json(&out);
    let arr = doc.as_array().expect("array of points");
    assert_eq!(arr.len(), 3);
    assert_eq!(arr[0]["p"], serde_json::json!([-1]));
    assert_eq!(arr[2]["p"], serde_json::json!([1]));
}

#[test]
fn verify_degenerate_reports_monotone_deviations() {
    let out = qwhit(&["verify", "degenerate", "-n", "2", "-q", "0.5", "-k", "4,8,12"]);
    let doc = stdout_json(&out);
    let reports = doc.as_array().expect("report array");
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    let toda = reports
        .iter()
        .find(|r| r["check"] == "degenerate-toda" && r["params"]["r"] == 1)
        .expect("r=1 report");
    let devs: Vec<f64> = toda["deviations"]["sup_deviation"]
        .as_array()
        .expect("deviation table")
        .iter()
        .map(|v| v.as_f64().expect("number"))
        .collect();
    assert_eq!(devs.len(), 3);
    assert!(devs[0] > devs[1] && devs[1] > devs[2]);
    assert!(devs[2] < 1e-3);
}

#[test]
fn verify_small_suites_pass() {
    for args in [
        vec!["verify", "eigen", "-n", "2", "--window", "-1..1"],
        vec!["verify", "recursion", "-n", "2", "--window", "-1..1"],
        vec!["verify", "pieri", "-n", "2", "--max-part", "2"],
        vec!["verify", "--suite", "cauchy", "--degree-bound", "2"],
    ] {
        let out = qwhit(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verify_failure_exits_one() {
    // k = 0, 1 stops far from the limit, so the final deviation misses the
    // pinned tolerance and the suite must report failure.
    let out = qwhit(&["verify", "degenerate", "-n", "2", "-k", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("JSON on failure too");
    let reports = doc.as_array().expect("report array");
    assert!(reports.iter().any(|r| r["status"] == "fail"));
    let failed = reports.iter().find(|r| r["status"] == "fail").expect("failed report");
    assert!(failed["residual"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qwhit(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(qwhit(&["verify"]).status.code(), Some(2));
    assert_eq!(qwhit(&["whittaker", "eval", "-n", "2", "-p", "1"]).status.code(), Some(2));
    assert_eq!(qwhit(&["whittaker", "eval", "-n", "0", "-p", ""]).status.code(), Some(2));
    assert_eq!(qwhit(&["verify", "degenerate", "-q", "1.5"]).status.code(), Some(2));
    assert_eq!(qwhit(&["verify", "degenerate", "-k", "8,4"]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_qwhit"))
        .args(["verify", "eigen", "-n", "3"])
        .env("QWHIT_MAX_RANK", "2")
        .output()
        .expect("spawn qwhit");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output_has_stable_header() {
    let out = qwhit(&["verify", "pieri", "--max-part", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).expect("utf8");
    assert!(text.starts_with("check,status,wall_ms,params,residual\n"));

    let out = qwhit(&["whittaker", "eval", "-n", "1", "-p", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).expect("utf8");
    assert!(text.starts_with("rank,p,psi,psi_tilde\n"));
}

#[test]
fn reports_are_deterministic_up_to_wall_time() {
    let strip = |out: &Output| {
        let mut doc = stdout_json(out);
        for r in doc.as_array_mut().expect("array") {
            r.as_object_mut().expect("object").remove("wall_ms");
        }
        doc
    };
    let a = qwhit(&["verify", "intertwine", "--seed", "5"]);
    let b = qwhit(&["verify", "intertwine", "--seed", "5"]);
    assert_eq!(strip(&a), strip(&b));
}
