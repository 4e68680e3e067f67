use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples");
    dir.join(name).to_string_lossy().into_owned()
}

fn bicomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

#[test]
fn wasserstein_two_point_line() {
    let out = bicomb(&[
        "wasserstein",
        "--space",
        &example("line.json"),
        "--mu",
        &example("mu-line.json"),
        "--nu",
        &example("nu-line.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["w1"], 0.5);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn barycenter_of_triangle() {
    let out = bicomb(&["barycenter", "--measure", &example("triangle.json")]);
    assert_eq!(out.status.code(), Some(0));
    let point = &json(&out)["result"]["point"];
    assert_eq!(point, &serde_json::json!([1.0, 1.0]));
}

#[test]
fn recursive_barycenter_of_triangle() {
    let out = bicomb(&["barycenter", "--measure", &example("triangle.json"), "--recursive"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let p: Vec<f64> = serde_json::from_value(doc["result"]["point"].clone()).unwrap();
    assert!((p[0] - 1.0).abs() < 1e-8 && (p[1] - 1.0).abs() < 1e-8, "{p:?}");
    assert_eq!(doc["result"]["config"]["strategy"], "recursive");
}

#[test]
fn tree_barycenter_is_center() {
    let out = bicomb(&["barycenter", "--measure", &example("tree-triple.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["result"]["point"]["r"].as_f64().unwrap();
    assert!(r < 1e-10);
}

#[test]
fn tree_space_check_passes() {
    let out = bicomb(&[
        "space-check",
        "--space",
        &example("tree.json"),
        "--props",
        "conical,midpoint,busemann",
        "-n",
        "10000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out)["result"]["reports"].as_array().unwrap().clone();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["pass"] == true && r["samples"] == 10000));
}

#[test]
fn failing_property_exits_one() {
    // A negative tolerance cannot be met even by a zero margin.
    let out = bicomb(&["space-check", "--space", &example("plane.json"), "--props", "conical", "-n", "10", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["space-check", "--space", &example("star-seq.json"), "-n", "200", "--seed", "11"];
    let a = bicomb(&args);
    let b = bicomb(&args);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut with_out = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    with_out.extend(["--out", &p]);
    let c = bicomb(&with_out);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    assert_eq!(json(&a)["seed"], 11);
}

#[test]
fn digest_tracks_input_contents() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("space.json");
    let digest = |text: &str| {
        std::fs::write(&space, text).unwrap();
        let out = bicomb(&["space-check", "--space", &space.to_string_lossy(), "--props", "metric", "-n", "5"]);
        json(&out)["input_digest"].as_str().unwrap().to_owned()
    };
    let a = digest(r#"{"kind": "euclidean", "dim": 2}"#);
    let b = digest(r#"{"kind": "euclidean", "dim": 3}"#);
    let c = digest(r#"{"kind": "euclidean", "dim": 2}"#);
    assert_ne!(a, b);
    assert_eq!(a, c);
}

#[test]
fn fixpoint_rotation_converges() {
    let out = bicomb(&[
        "fixpoint",
        "--space",
        &example("plane.json"),
        "--iso",
        &example("third-turn.json"),
        "--x0",
        &example("x0-plane.json"),
        "--target",
        &example("unit-ball.json"),
        "--schedule",
        "3,30,300",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["status"], "converged");
    assert_eq!(r["density"], 1.0);
    let p: Vec<f64> = serde_json::from_value(r["point"].clone()).unwrap();
    assert!(p.iter().all(|c| c.abs() < 1e-10));
}

#[test]
fn fixpoint_shift_is_not_converged() {
    let out = bicomb(&[
        "fixpoint",
        "--space",
        &example("star-seq.json"),
        "--iso",
        "shift",
        "--x0",
        &example("e0.json"),
        "--target",
        &example("star-ball.json"),
        "--schedule",
        "10,100",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# command=fixpoint seed=7"));
    assert_eq!(lines.next().unwrap(), "horizon,residual,invariance,cauchy_gap,k_used");
    let residual: f64 = lines.next().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((residual - 6f64.sqrt() / 10.0).abs() < 1e-12);
}

#[test]
fn density_certificate_outcomes() {
    let run = |iso: &str, target: &str| {
        bicomb(&[
            "density",
            "--space",
            &example("plane.json"),
            "--iso",
            iso,
            "--x0",
            &example("x0-plane.json"),
            "--target",
            &example(target),
            "--window",
            "300",
            "--shifts",
            "300",
            "--certify",
            "100",
        ])
    };
    let fifth = run(&example("fifth-turn.json"), "small-ball.json");
    assert_eq!(fifth.status.code(), Some(0));
    let r = &json(&fifth)["result"];
    assert_eq!(r["certificate"]["k0"], 5);
    assert_eq!(r["density"], 0.2);

    let translate = run("translate", "unit-ball.json");
    assert_eq!(translate.status.code(), Some(1));
    assert_eq!(json(&translate)["result"]["certificate"]["certified"], false);
}

#[test]
fn counterexample_verify_small() {
    let out = bicomb(&["counterexample", "verify", "--samples", "200", "--max-support", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let reports = doc["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r["pass"] == true));
    assert_eq!(doc["result"]["decay"][1]["star_sq"], "3/2");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bicomb(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bicomb(&["space-check"]).status.code(), Some(2));
    let missing = bicomb(&["space-check", "--space", "/nonexistent/space.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_prop = bicomb(&["space-check", "--space", &example("tree.json"), "--props", "bogus"]);
    assert_eq!(bad_prop.status.code(), Some(2));
    let stray_tol = bicomb(&[
        "wasserstein",
        "--space",
        &example("line.json"),
        "--mu",
        &example("mu-line.json"),
        "--nu",
        &example("nu-line.json"),
        "--tol",
        "1e-3",
    ]);
    assert_eq!(stray_tol.status.code(), Some(2));
    let no_space = bicomb(&["wasserstein", "--mu", &example("mu-line.json"), "--nu", &example("nu-line.json")]);
    assert_eq!(no_space.status.code(), Some(2));
    let unknown_iso = bicomb(&[
        "fixpoint",
        "--space",
        &example("plane.json"),
        "--iso",
        "no-such-iso",
        "--x0",
        &example("x0-plane.json"),
        "--target",
        &example("unit-ball.json"),
    ]);
    assert_eq!(unknown_iso.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown_iso.stderr).contains("rot3"));
}

#[test]
fn schema_violations_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"atoms": [{"point": [0], "mass": "1/2"}]}"#).unwrap();
    let out = bicomb(&["barycenter", "--space", &example("line.json"), "--measure", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&bad, r#"{"atoms": [{"point": [0], "mass": "1"}], "extra": 1}"#).unwrap();
    let out = bicomb(&["barycenter", "--space", &example("line.json"), "--measure", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&bad, r#"{"atoms": [{"point": [0, 1], "mass": "1"}]}"#).unwrap();
    let out = bicomb(&["barycenter", "--space", &example("line.json"), "--measure", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"strategy": "recursive", "max_k": 1}"#).unwrap();
    let out = bicomb(&[
        "barycenter",
        "--space",
        &example("line.json"),
        "--measure",
        &example("mu-line.json"),
        "--config",
        &cfg.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not settle"));
}
