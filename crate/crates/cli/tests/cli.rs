use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn xlag(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_xlag"));
    cmd.arg("--no-timestamp")
        .args(args)
        .env_remove("XLAG_TOL")
        .env_remove("XLAG_CONTOUR_TOL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn admissible_worked_example() {
    let out = xlag(
        &[
            "admissible",
            "--c=-17/4",
            "--pair",
            r#"{"f1":[1,2,8,9],"f2":[1,2]}"#,
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["method_direct"], false);
    assert_eq!(v["method_segments"], false);
    let segs: Vec<Vec<String>> = v["segments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            s["elements"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| e.as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    assert_eq!(
        segs,
        vec![
            vec!["1/4", "1/1", "5/4", "2/1"],
            vec!["17/4"],
            vec!["8/1", "9/1"]
        ]
    );
    assert_eq!(v["segments"][1]["size"], 1);
}

#[test]
fn construct_classical() {
    let out = xlag(
        &[
            "construct",
            "--alpha",
            "1/2",
            "--pair",
            r#"{"f1":[],"f2":[]}"#,
            "--n",
            "2",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let p = &v["polynomials"][0];
    assert_eq!(p["n"], 2);
    assert_eq!(p["degree"], 2);
    assert_eq!(
        p["coefficients"],
        serde_json::json!(["15/8", "-5/2", "1/2"])
    );
}

#[test]
fn verify_eigen_exit_zero() {
    let out = xlag(
        &[
            "verify-eigen",
            "--alpha",
            "1/3",
            "--pair",
            r#"{"f1":[1,2],"f2":[3]}"#,
            "--count",
            "6",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
}

#[test]
fn reproduce_appendix() {
    let out = xlag(&["--format", "text", "reproduce-appendix"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("maximal segments: {1/4, 1, 5/4, 2}, {17/4}, {8, 9}"));
    assert!(text.contains("maximal segments: {1/4, 1, 5/4, 2}, {17/4, 5}, {8, 9}"));
    assert!(text.contains("maximal segments: {1/4, 1, 5/4, 2}, {4, 17/4}, {8, 9}"));
    assert_eq!(text.matches("not admissible").count(), 1);
}

#[test]
fn malformed_pair_is_usage_error() {
    for pair in [
        r#"{"f1":[1,1],"f2":[]}"#,
        r#"{"f1":[0],"f2":[]}"#,
        "not json",
    ] {
        let out = xlag(&["omega", "--alpha", "1/2", "--pair", pair], None);
        assert_eq!(out.status.code(), Some(2), "{pair}");
        let v = json(&out);
        assert_eq!(v["status"], "error");
        assert_eq!(v["error"]["field"], "pair");
    }
}

#[test]
fn invalid_alpha_and_index() {
    let out = xlag(
        &[
            "construct",
            "--alpha",
            "1/0",
            "--pair",
            r#"{"f1":[],"f2":[]}"#,
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["field"], "alpha");
    let out = xlag(
        &[
            "construct",
            "--alpha",
            "1/2",
            "--pair",
            r#"{"f1":[1],"f2":[]}"#,
            "--n",
            "1",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "index");
}

#[test]
fn pair_from_stdin() {
    let args = ["omega", "--alpha", "1/2"];
    let piped = xlag(&args, Some(r#"{"f1":[1],"f2":[]}"#));
    let flagged = xlag(
        &[&args[..], &["--pair", r#"{"f1":[1],"f2":[]}"#]].concat(),
        None,
    );
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(piped.stdout, flagged.stdout);
}

#[test]
fn output_is_deterministic_without_timestamp() {
    let args = [
        "verify-contour",
        "--alpha",
        "1/2",
        "--pair",
        r#"{"f1":[1],"f2":[]}"#,
        "--count",
        "3",
    ];
    let a = xlag(&args, None);
    let b = xlag(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timestamp").is_none());
}

#[test]
fn orthogonality_precondition_failure() {
    let out = xlag(
        &[
            "verify-orthogonality",
            "--alpha",
            "1/2",
            "--pair",
            r#"{"f1":[2],"f2":[]}"#,
            "--count",
            "3",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "check-failed");
}

#[test]
fn orthogonality_admissible_family() {
    let out = xlag(
        &[
            "verify-orthogonality",
            "--alpha",
            "1/2",
            "--pair",
            r#"{"f1":[],"f2":[1]}"#,
            "--count",
            "4",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "ok");
}

#[test]
fn tolerance_from_environment() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_xlag"));
    let out = cmd
        .args([
            "--no-timestamp",
            "verify-orthogonality",
            "--alpha",
            "1/2",
            "--pair",
            r#"{"f1":[],"f2":[1]}"#,
            "--count",
            "3",
        ])
        .env("XLAG_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
