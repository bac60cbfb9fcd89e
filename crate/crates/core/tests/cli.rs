use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn extremal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extremal"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = extremal(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lawson_three_one() {
    let v = json(&["lawson", "--m", "3", "--k", "1", "--format", "json"]);
    assert_eq!(v["family"], "Lawson");
    assert_eq!(v["topology"], "torus");
    assert_eq!(v["index"], 5);
    let e = extremal::elliptic::complete_e(2.0 * 2f64.sqrt() / 3.0).unwrap();
    assert!((v["value"].as_f64().unwrap() - 24.0 * PI * e).abs() < 1e-11);
}

#[test]
fn excluded_ratio_exits_2() {
    let out = extremal(&["otsuki", "--p", "1", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        &["lawson", "--m", "2", "--k", "2"][..],
        &["bounds", "--surface", "sphere", "--n", "1"],
        &["bounds", "--surface", "torus", "--n", "0"],
        &["bipolar", "lawson", "--m", "1", "--k", "1"],
        &["otsuki", "--p", "3", "--q", "4"],
        &["verify", "--max-q", "0", "--max-m", "1", "--max-r2", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(extremal(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(extremal(&["--help"]).status.code(), Some(0));
}

#[test]
fn csv_schema() {
    let out = extremal(&[
        "clifford",
        "--max-r2",
        "5",
        "--format",
        "csv",
        "--precision",
        "6",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,params,topology,index,value,value_kind,baseline,margin"
    );
    assert_eq!(lines.len(), 5);
    assert!(
        lines[1].starts_with("Clifford,r2=1,torus,1,39.478418,exact,45.585750"),
        "{}",
        lines[1]
    );
    assert!(!text.contains('\r'));
}

#[test]
fn bipolar_records() {
    let v = json(&[
        "bipolar", "lawson", "--m", "3", "--k", "1", "--format", "json",
    ]);
    assert_eq!(v["topology"], "klein");
    assert_eq!(v["index"], 1);
    assert!(v["margin"].as_f64().unwrap().abs() < 1e-12);
    let v = json(&[
        "bipolar", "otsuki", "--p", "5", "--q", "8", "--format", "json",
    ]);
    assert_eq!(v["index"], 16);
    assert_eq!(v["value_kind"], "upper-bound");
    assert_eq!(v["params"], serde_json::json!({"p": 5, "q": 8}));
}

#[test]
fn human_output_shows_formula() {
    let out = extremal(&["otsuki", "--p", "2", "--q", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("8*pi*q*Phi(a)"), "{text}");
    assert!(text.contains("8*pi*(i-1+pi/sqrt(3))"), "{text}");
}

#[test]
fn verify_small_limits_pass_and_are_deterministic() {
    let args = [
        "verify", "--max-q", "10", "--max-m", "20", "--max-r2", "100", "--format", "json",
    ];
    let a = extremal(&args);
    let b = extremal(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["limits"]["max_m"], 20);
    assert!(v["sweeps"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["passed"] == true));
}

#[test]
fn geodesic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let v = json(&[
        "geodesic",
        "--p",
        "2",
        "--q",
        "3",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(v["closed"], true);
    assert!(v["relative_difference"].as_f64().unwrap() < 1e-6);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,phi,theta"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), v["samples_written"].as_u64().unwrap() as usize);
    assert!(rows.len() <= 10_000);
    assert!(rows.windows(2).all(|w| w[1][0] >= w[0][0]));
    assert!(rows.iter().all(|r| r[2] >= 0.0 && r[2] < 2.0 * PI));
}
