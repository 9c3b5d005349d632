//! End-to-end tests of the `su3-geom` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use su3_geometry::cli::{DecomposeJson, FrameJson, IntegrationJson, SampleJson, VolumeJson};
use su3_geometry::linalg::Matrix8;

fn su3_geom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su3-geom"))
        .args(args)
        .env_remove("SU3_GEOM_WORKERS")
        .output()
        .expect("binary runs")
}

fn su3_geom_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_su3-geom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const POINT: [&str; 8] = ["0.3", "0.5", "1.1", "0.7", "0.4", "0.6", "1.9", "2.2"];

fn frames(extra: &[&str]) -> FrameJson {
    let mut args = vec!["frames", "--point"];
    args.extend(POINT);
    args.extend(extra);
    let o = su3_geom(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn real8(rows: &[Vec<f64>]) -> Matrix8 {
    Matrix8::from_fn(|i, j| rows[i][j])
}

#[test]
fn verify_algebra_passes() {
    let o = su3_geom(&["verify", "--suite", "algebra"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("36 pairs"));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_frames_reports_json() {
    let o = su3_geom(&["verify", "--suite", "frames", "--points", "100", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    let defining = checks
        .iter()
        .find(|c| c["name"].as_str().unwrap().starts_with("ΛᵢD"))
        .unwrap();
    assert!(defining["residual"].as_f64().unwrap() <= 1e-9);
    assert!(!v["typo_report"].as_array().unwrap().is_empty());
}

#[test]
fn verify_rejects_bad_flags() {
    assert_eq!(code(&su3_geom(&["verify", "--suite", "everything"])), 2);
    assert_eq!(code(&su3_geom(&["verify", "--points", "many"])), 2);
}

#[test]
fn sample_csv_is_reproducible() {
    let a = su3_geom(&["sample", "--n", "3", "--seed", "1", "--format", "csv"]);
    let b = su3_geom(&["sample", "--n", "3", "--seed", "1", "--format", "csv"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "alpha,beta,gamma,theta,a,b,c,phi,weight");
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 9);
    }
    assert_ne!(a.stdout, su3_geom(&["sample", "--n", "3", "--seed", "2"]).stdout);
}

#[test]
fn sample_rejects_zero() {
    assert_eq!(code(&su3_geom(&["sample", "--n", "0"])), 2);
}

#[test]
fn sampled_matrices_are_unitary_and_decompose() {
    let o = su3_geom(&[
        "sample", "--n", "50", "--seed", "4", "--emit", "matrices", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let samples: Vec<SampleJson> = serde_json::from_str(&stdout(&o)).unwrap();
    for s in &samples {
        assert!(s.angles.is_none());
        let u = s.matrix.as_ref().unwrap().to_matrix3().unwrap();
        assert!(su3_geometry::GroupElement::new(u).is_ok());
    }
    let d = su3_geom_stdin(&["decompose"], &stdout(&o));
    assert_eq!(code(&d), 0);
    let out: Vec<DecomposeJson> = serde_json::from_str(&stdout(&d)).unwrap();
    assert_eq!(out.len(), 50);
    assert!(out.iter().all(|r| r.residual <= 1e-9));
}

#[test]
fn json_output_roundtrips_byte_identical() {
    let o = su3_geom(&[
        "sample", "--n", "5", "--seed", "9", "--emit", "both", "--format", "json",
    ]);
    let text = stdout(&o);
    let parsed: Vec<SampleJson> = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(text, again);
}

#[test]
fn decompose_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"re":[[1,0,0],[0,1,0],[0,0,1]],"im":[[0,0,0],[0,0,0],[0,0,0]]}}"#
    )
    .unwrap();
    let o = su3_geom(&["decompose", "--file", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let d: DecomposeJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(d.angles.to_array(), [0.0; 8]);
    assert_eq!(d.residual, 0.0);
}

#[test]
fn decompose_errors() {
    let non_unitary = r#"{"re":[[1,1,0],[0,1,0],[0,0,1]],"im":[[0,0,0],[0,0,0],[0,0,0]]}"#;
    let o = su3_geom_stdin(&["decompose"], non_unitary);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in SU(3)"));
    assert_eq!(code(&su3_geom_stdin(&["decompose"], "{\"re\": 1}")), 2);
    assert_eq!(code(&su3_geom_stdin(&["decompose"], "[[1,2]")), 2);
}

#[test]
fn frames_at_singular_point_name_the_factor() {
    let o = su3_geom(&["frames", "--point", "0", "0", "0", "0", "0", "0", "0", "0"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("sin2β"));
}

#[test]
fn frames_and_forms_pair_to_identity() {
    for chirality in ["left", "right"] {
        let frame = frames(&["--chirality", chirality]);
        let forms = frames(&["--chirality", chirality, "--forms"]);
        assert_eq!(frame.kind, "frame");
        assert_eq!(forms.kind, "coframe");
        assert_eq!(forms.chirality, chirality);
        assert_eq!(
            forms.basis_order,
            ["alpha", "beta", "gamma", "theta", "a", "b", "c", "phi"]
        );
        // real frame X = −iΛ has entries Im Λ
        let x = real8(&frame.im);
        let w = real8(&forms.re);
        assert!((w * x.transpose() - Matrix8::identity()).abs().max() <= 1e-9);
    }
}

#[test]
fn closed_tables_differ_only_where_catalogued() {
    let constructive = frames(&["--chirality", "left"]);
    let closed = frames(&["--chirality", "left", "--closed"]);
    assert!(closed.closed);
    let diff = (real8(&constructive.im) - real8(&closed.im)).abs().max();
    assert!(diff <= 1e-9, "left vector fields are printed correctly: {diff}");
    let constructive = frames(&["--chirality", "right", "--forms"]);
    let closed = frames(&["--chirality", "right", "--forms", "--closed"]);
    assert!((real8(&constructive.re) - real8(&closed.re)).abs().max() > 1e-3);
}

fn integrate(args: &[&str]) -> IntegrationJson {
    let mut all = vec!["integrate"];
    all.extend(args);
    let o = su3_geom(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn integrate_abs_trace_squared_mc() {
    let r = integrate(&[
        "--function",
        "abstr2",
        "--method",
        "mc",
        "--n",
        "1000000",
        "--seed",
        "3",
    ]);
    let se = r.std_error.unwrap();
    assert_eq!(r.n, 1_000_000);
    assert!((r.estimate_re - 1.0).abs() <= 4.0 * se && r.estimate_im == 0.0, "{r:?}");
}

#[test]
fn integrate_trace_by_quadrature() {
    let r = integrate(&["--function", "tr", "--method", "quad", "--nodes", "6"]);
    assert!(r.std_error.is_none());
    assert!(r.estimate_re.hypot(r.estimate_im) <= 0.02, "{r:?}");
}

#[test]
fn integrate_entry_polynomial() {
    let r = integrate(&[
        "--function",
        "entrypoly",
        "1,1,conj,1;1,1,noconj,1",
        "--n",
        "200000",
        "--seed",
        "5",
    ]);
    assert!((r.estimate_re - 1.0 / 3.0).abs() <= 4.0 * r.std_error.unwrap(), "{r:?}");
}

#[test]
fn integrate_rejects_bad_specs() {
    for spec in ["1,1,conj", "4,1,conj,1", "1,1,sometimes,1"] {
        assert_eq!(
            code(&su3_geom(&["integrate", "--function", "entrypoly", spec])),
            2,
            "{spec}"
        );
    }
    assert_eq!(code(&su3_geom(&["integrate", "--function", "cosh"])), 2);
}

#[test]
fn workers_flag_and_environment() {
    let base = integrate(&["--function", "adjchar", "--n", "20000", "--seed", "8"]);
    let one = integrate(&["--workers", "1", "--function", "adjchar", "--n", "20000", "--seed", "8"]);
    assert_eq!(base.estimate_re, one.estimate_re);
    let o = Command::new(env!("CARGO_BIN_EXE_su3-geom"))
        .args(["integrate", "--workers", "2", "--function", "tr", "--n", "10"])
        .env("SU3_GEOM_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2, "the environment overrides the flag");
}

fn volume(args: &[&str]) -> VolumeJson {
    let mut all = vec!["volume"];
    all.extend(args);
    let o = su3_geom(&all);
    assert_eq!(code(&o), 0);
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn volume_reports_both_targets() {
    let v = volume(&[]);
    assert!((v.analytic_over_pi5 - 1.0).abs() <= 1e-12);
    assert!((v.ratio - 1.0).abs() <= 1e-10);
    assert!((v.analytic_over_claimed - 0.5).abs() <= 1e-12);
    assert!(v.note.contains("2π⁵"));
    let doubled = volume(&["--phi-range", "12.566370614359172"]);
    assert!((doubled.analytic / doubled.claimed_two_pi5 - 1.0).abs() <= 1e-12);
}
