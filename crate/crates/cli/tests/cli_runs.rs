use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rbound_lab::emit::canonical_json;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rbound-lab"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(kind: &str, config: &Path, extra: &[&str]) -> Output {
    bin().arg(kind).arg("--config").arg(config).args(extra).output().expect("binary runs")
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn every_shipped_config_runs() {
    let mut seen = 0;
    for entry in std::fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let cfg: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let kind = cfg["kind"].as_str().unwrap().to_string();
        let report = json_of(&run(&kind, &path, &[]));
        assert_eq!(report["kind"], kind.as_str());
        assert_eq!(report["provenance"]["seed"], cfg["seed"].as_u64().unwrap_or(0));
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn lorentz_indicator_reports_four() {
    let report = json_of(&run("lorentz", &configs().join("lorentz.json"), &[]));
    assert!((report["result"]["value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn sharpness_slope_above_threshold() {
    let report = json_of(&run("sharpness", &configs().join("sharpness.json"), &[]));
    let slope = report["result"]["fit"]["slope"].as_f64().unwrap();
    assert!((slope + 0.25).abs() <= 0.1, "{slope}");
    assert_eq!(report["result"]["verdict"], "r_bounded_consistent");
}

#[test]
fn malformed_json_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_config(&dir, "bad.json", "{\"kind\": \"lorentz\", ");
    let out = run("lorentz", &p, &[]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "config-error");
}

#[test]
fn schema_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_config(
        &dir,
        "bad.json",
        r#"{"kind": "rbound", "parameters": {"domain": {"dim": 2, "exponent": 0.5},
            "codomain": {"dim": 2, "exponent": 2}, "operators": [], "n": 2}}"#,
    );
    let out = run("rbound", &p, &[]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["path"], "parameters.domain");

    let p = write_config(&dir, "typo.json", r#"{"kind": "lorentz", "parameters": {"function": {"weights": [1], "values": [1]}, "p": 2, "q": 1, "from": 1}}"#);
    let err: Value = serde_json::from_slice(&run("lorentz", &p, &[]).stderr).unwrap();
    assert_eq!(err["error"]["kind"], "config-error");

    // the subcommand must match the config
    let err: Value = serde_json::from_slice(&run("besov", &configs().join("lorentz.json"), &[]).stderr).unwrap();
    assert_eq!(err["error"]["path"], "$.kind");
}

#[test]
fn module_errors_propagate() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_config(&dir, "grid.json", r#"{"kind": "sharpness", "parameters": {"p": 1, "alpha": 0.5, "n_values": [3, 4], "grid": 1024}}"#);
    let out = run("sharpness", &p, &[]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid-parameter");
}

#[test]
fn reports_are_byte_reproducible() {
    for name in ["rbound.json", "integral.json", "cotype.json"] {
        let path = configs().join(name);
        let kind = name.trim_end_matches(".json");
        let a = run(kind, &path, &[]);
        let b = bin().env("RBLAB_THREADS", "3").arg(kind).arg("--config").arg(&path).output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn json_roundtrip_is_the_identity() {
    let out = run("rademacher", &configs().join("rademacher.json"), &[]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(canonical_json(&v).as_bytes(), out.stdout.as_slice());
}

#[test]
fn seed_override_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run("integral", &configs().join("integral.json"), &["--seed", "77", "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], 77);
    assert_eq!(report["result"]["seed"], 77);
}

#[test]
fn sharpness_csv_has_a_row_per_n() {
    let out = run("sharpness", &configs().join("sharpness_below_threshold.json"), &["--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,Q_N,log_fit,slope,expected_slope,verdict");
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().skip(1).all(|l| l.ends_with(",unbounded")));
}
