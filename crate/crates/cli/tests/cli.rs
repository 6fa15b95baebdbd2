use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_niemytzki-lab"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().args(args).arg("--out").arg(dir).output().expect("binary runs")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn refute_triangles_against_discs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["refute", "--a", "triangles:alpha=0.7853981633974483", "--b", "disc"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(tmp.path());
    assert_eq!(r["verdict"], "not_homeomorphic");
    assert_eq!(r["witnesses"][0]["n"], 1);
    assert_eq!(r["witnesses"][0]["m"], 6);
    let summary = std::fs::read_to_string(tmp.path().join("summary.txt")).unwrap();
    assert!(summary.starts_with("NOT HOMEOMORPHIC"));
    assert!(summary.contains("proxy:"));
}

#[test]
fn inconclusive_is_not_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["refute", "--a", "parabolas", "--b", "parabolas"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(tmp.path());
    assert_eq!(r["verdict"], "inconclusive");
    let summary = std::fs::read_to_string(tmp.path().join("summary.txt")).unwrap();
    assert!(summary.starts_with("INCONCLUSIVE"));
    assert!(!summary.contains("NOT HOMEOMORPHIC"));
}

#[test]
fn refute_probes_agree_with_closed_form() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["refute", "--a", "w", "--b", "parabolas", "--probe-k", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(tmp.path());
    let probes = r["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 8 * 3);
    assert!(probes.iter().all(|p| p["max_relative_deviation"].as_f64().unwrap() < 1e-9));
    assert!(tmp.path().join("samples.csv").is_file());
}

#[test]
fn reports_are_byte_identical() {
    let (t1, t2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["refute", "--a", "w", "--b", "triangles", "--seed", "11"];
    assert!(run_in(t1.path(), &args).status.success());
    assert!(run_in(t2.path(), &args).status.success());
    let a = std::fs::read(t1.path().join("report.json")).unwrap();
    let b = std::fs::read(t2.path().join("report.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn refine_parabolas_and_discs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["refine", "--a", "parabolas", "--b", "disc"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(report(tmp.path())["verdict"], "Equivalent");
}

#[test]
fn lens_figure_and_agreement() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["lens", "--family", "parabolas", "--n", "2", "--a", "0", "--b", "0.4", "--grid", "800"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(tmp.path());
    assert_eq!(r["components"], 2);
    assert!(r["agreement_fraction"].as_f64().unwrap() >= 0.999);
    let svg = std::fs::read_to_string(tmp.path().join("figure.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    let csv = std::fs::read_to_string(tmp.path().join("samples.csv")).unwrap();
    assert_eq!(csv.lines().count(), 800);
}

#[test]
fn lens_accepts_negative_anchor() {
    let out = bin().args(["lens", "--family", "parabolas", "--n", "2", "--a", "-0.2", "--b", "0.2", "--grid", "200"]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(String::from_utf8_lossy(&out.stdout).contains("saddle point (0.000000, 0.080000)"));
}

#[test]
fn spec_files_are_accepted() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = tmp.path().join("parabolas.json");
    std::fs::write(
        &spec,
        r#"{"name":"parabolas","kind":"power_law","coefficient":{"form":"power","param":1},"exponent":{"form":"constant","param":2}}"#,
    )
    .unwrap();
    let disc = tmp.path().join("disc.json");
    std::fs::write(&disc, r#"{"kind":"disc"}"#).unwrap();
    let out = run_in(tmp.path(), &["refine", "--a", spec.to_str().unwrap(), "--b", disc.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(report(tmp.path())["verdict"], "Equivalent");
}

#[test]
fn malformed_spec_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = tmp.path().join("bad.json");
    std::fs::write(&spec, r#"{"kind":"power_law","coefficient":{"form":"power","param":1},"exponnent":{"form":"constant","param":2}}"#)
        .unwrap();
    let out = bin().args(["verify-family", "--family", spec.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("exponnent"));
}

#[test]
fn axiom_failures_stop_runs_unless_skipped() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = tmp.path().join("shrinking.json");
    std::fs::write(
        &spec,
        r#"{"name":"shrinking","kind":"power_law","coefficient":{"form":"power","param":-1},"exponent":{"form":"constant","param":2}}"#,
    )
    .unwrap();
    let path = spec.to_str().unwrap();
    let out = bin().args(["refine", "--a", path, "--b", "parabolas"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("axiom"));
    let out = bin().args(["refine", "--a", path, "--b", "parabolas", "--no-verify", "--n-max", "4", "--k-max", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let v = run_in(tmp.path(), &["verify-family", "--family", path, "--n-max", "4", "--grid", "200"]);
    assert_eq!(v.status.code(), Some(0));
    let r = report(tmp.path());
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false));
}

#[test]
fn verify_builtin_family() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["verify-family", "--family", "power:s=1/2", "--n-max", "8", "--grid", "1000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(tmp.path());
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert!(std::fs::read_to_string(tmp.path().join("summary.txt")).unwrap().contains("basic family: yes"));
}

#[test]
fn unknown_family_exits_two() {
    let out = bin().args(["refute", "--a", "hyperbolas", "--b", "w"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn liminf_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["liminf", "--function", "2+sin(1/x)"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(tmp.path());
    assert!((r["estimate"].as_f64().unwrap() - 1.0).abs() < 0.05);
    assert_eq!(r["seed"], 0);
    let csv = std::fs::read_to_string(tmp.path().join("samples.csv")).unwrap();
    assert!(csv.starts_with("x,value,window_id"));
    assert_eq!(csv.lines().count(), 41);

    let out = run_in(tmp.path(), &["liminf", "--h", "x", "--phi", "x^2", "--psi", "x"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(report(tmp.path())["holds"], true);

    let out = run_in(tmp.path(), &["liminf", "--h", "x", "--phi", "x", "--psi", "x^2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_in(tmp.path(), &["liminf", "--random", "10", "--ratio", "0.9", "--depth", "300", "--seed", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(tmp.path());
    assert_eq!(r["all_hold"], true);
    assert_eq!(r["seed"], 5);
}

#[test]
fn eq1_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["eq1", "--g", "x^3", "--u", "0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(tmp.path());
    assert!(r["estimate"].as_f64().unwrap() <= 0.01);
    assert_eq!(r["skipped"], 0);

    let out = run_in(tmp.path(), &["eq1", "--g", "arctan", "--u", "0"]);
    assert!(out.status.success());
    assert!((report(tmp.path())["estimate"].as_f64().unwrap() - 1.0).abs() < 0.01);

    let out = run_in(tmp.path(), &["eq1", "--g", "0*x", "--u", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zero denominator"));
}

#[test]
fn thread_cap_is_validated() {
    let ok = bin().env("NIEMYTZKI_LAB_THREADS", "1").args(["refute", "--a", "w", "--b", "parabolas"]).output().unwrap();
    assert!(ok.status.success());
    let bad = bin().env("NIEMYTZKI_LAB_THREADS", "0").args(["refute", "--a", "w", "--b", "parabolas"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
