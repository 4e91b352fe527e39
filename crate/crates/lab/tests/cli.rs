use std::fs;
use std::process::{Command, Output};

use cslab::format::{parse_matrix, MatrixFile, VerdictReport};
use serde_json::Value;

fn cslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cslab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_counterexample_report() {
    let o = cslab(&["analyze", "--shift", "1,2,1", "--format", "report"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["criteria"]["cs"], true);
    assert_eq!(v["criteria"]["duggal_cs"], false);
    assert_eq!(v["structure"]["binormal"], true);
    assert_eq!(v["polar"]["u_partial_isometry"], true);
    assert_eq!(v["polar"]["u_unitary"], false);
    assert_eq!(v["verdicts"][0]["verdict"]["status"], "CS");
}

#[test]
fn analyze_mean_at_zero() {
    let o = cslab(&[
        "analyze", "--shift", "1,1,1", "--t", "0", "--format", "report",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mean = v["transforms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["kind"] == "mean")
        .unwrap();
    let m: MatrixFile = serde_json::from_value(mean["matrix"].clone()).unwrap();
    let sd: Vec<f64> = m
        .to_matrix()
        .unwrap()
        .superdiagonal()
        .iter()
        .map(|z| z.re)
        .collect();
    assert_eq!(sd, vec![0.5, 1.0, 1.0]);
}

#[test]
fn analyze_zero_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero4.json");
    let data = vec![[0.0, 0.0]; 16];
    fs::write(
        &path,
        serde_json::to_string(&MatrixFile {
            rows: 4,
            cols: 4,
            data,
        })
        .unwrap(),
    )
    .unwrap();
    let o = cslab(&[
        "analyze",
        "--matrix",
        path.to_str().unwrap(),
        "--format",
        "report",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdicts"][0]["verdict"]["status"], "CS");
    assert_eq!(v["verdicts"][0]["verdict"]["residual"], 0.0);
    assert_eq!(v["structure"]["normal"], true);
    assert!(v["criteria"].is_null());
}

#[test]
fn table_output_is_default() {
    let o = cslab(&["analyze", "--shift", "1,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("closed-form criteria"));
    assert!(text.contains("binormal"));
}

#[test]
fn transform_writes_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("duggal.json");
    let o = cslab(&[
        "transform",
        "--shift",
        "1,2,1",
        "--kind",
        "duggal",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let m = parse_matrix(&fs::read_to_string(&out).unwrap()).unwrap();
    let sd: Vec<f64> = m.superdiagonal().iter().map(|z| z.re).collect();
    assert_eq!(sd, vec![0.0, 1.0, 2.0]);

    // The written file is accepted back as input.
    let o = cslab(&[
        "certify",
        "--matrix",
        out.to_str().unwrap(),
        "--format",
        "report",
    ]);
    let v: VerdictReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.status, "NotCS");
    assert!(v.certificate.is_none());
}

#[test]
fn certify_report_fields() {
    let o = cslab(&[
        "certify",
        "--shift",
        "1,2,1",
        "--seed",
        "7",
        "--restarts",
        "4",
        "--format",
        "report",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: VerdictReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.status, "CS");
    assert_eq!(v.seed, 7);
    assert_eq!((v.tau_yes, v.tau_no), (1e-7, 1e-3));
    let j = v.certificate.unwrap().to_matrix().unwrap();
    assert_eq!((j.rows(), j.cols()), (4, 4));
}

#[test]
fn complex_and_negative_weights() {
    let o = cslab(&["analyze", "--shift", "-1,2i,1-0.5i", "--format", "report"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["shift"]["weights"][1], serde_json::json!([0.0, 2.0]));
}

#[test]
fn repro_exit_codes() {
    assert_eq!(cslab(&["repro", "r1-duggal"]).status.code(), Some(0));
    assert_eq!(cslab(&["repro", "mean-n4"]).status.code(), Some(0));
    let o = cslab(&["repro", "unknown-id"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown-id"));
}

#[test]
fn repro_all_passes() {
    let o = cslab(&["repro", "--all", "--format", "report"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cslab(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        cslab(&["analyze", "--shift", "1,0,1"]).status.code(),
        Some(2)
    );
    assert_eq!(cslab(&["analyze", "--shift", "1,x"]).status.code(), Some(2));
    assert_eq!(
        cslab(&["analyze", "--shift", "1,1", "--t", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cslab(&[
            "transform",
            "--shift",
            "1,1",
            "--kind",
            "mean",
            "--t",
            "0.75"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        cslab(&["analyze", "--matrix", "/nonexistent/m.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cslab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn non_square_matrix_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rect.json");
    fs::write(&path, r#"{"rows":1,"cols":2,"data":[[1,0],[0,0]]}"#).unwrap();
    let o = cslab(&["certify", "--matrix", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_is_deterministic() {
    let a = cslab(&[
        "suite", "--seed", "1", "--cases", "20", "--format", "report",
    ]);
    let b = cslab(&[
        "suite", "--seed", "1", "--cases", "20", "--format", "report",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}
