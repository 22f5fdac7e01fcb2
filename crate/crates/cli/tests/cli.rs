use std::path::Path;
use std::process::{Command, Output};

use vbol::config::{FileConfig, OneOrMany, Suite, SuiteConfig};
use vbol::report::{CheckRecord, Report, Source, Status};

fn vbol(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vbol"))
        .current_dir(dir)
        .env_remove("VB_DEGREE_CAP")
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn siegel_recovery_passes_with_six_scans() {
    let dir = tempfile::tempdir().unwrap();
    let out = vbol(dir.path(), &["--suite", "siegel-recovery", "--n", "2", "--r-max", "2", "--out", "rep"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = read_json(&dir.path().join("rep.json"));
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.iter().filter(|c| c["name"] == "scan").count(), 6);
    assert_eq!(doc["summary"]["fail"], 0);
    assert!(dir.path().join("rep.md").exists());
    assert!(dir.path().join("rep.timings.json").exists());
}

#[test]
fn singular_index_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = vbol(dir.path(), &["--suite", "jacobi-recovery", "--index", "1,2;2,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("det M = 0"));
    assert!(!dir.path().join("vbol-report.json").exists());
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--n", "2"][..],
        &["--suite", "delta-eigen", "--n", "9"],
        &["--suite", "jacobi-maps", "--index", "1,2;3,4"],
        &["--suite", "bol-extension", "--index", "1,x;y"],
        &["--config", "missing.json"],
    ] {
        assert_eq!(vbol(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    std::fs::write(dir.path().join("bad.json"), r#"{"suite": "cofactor", "bogus": 1}"#).unwrap();
    assert_eq!(vbol(dir.path(), &["--config", "bad.json"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_vbol"))
        .current_dir(dir.path())
        .env("VB_DEGREE_CAP", "zero")
        .args(["--suite", "cofactor"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stated_constants_fail_unless_derived() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--suite", "jacobi-maps", "--n", "1", "--j", "1", "--out", "a"];
    assert_eq!(vbol(dir.path(), &args).status.code(), Some(1));
    let doc = read_json(&dir.path().join("a.json"));
    let kappa = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "det_transfer_kappa").unwrap().clone();
    assert_eq!(kappa["status"], "fail");
    assert_eq!(kappa["actual"], "2");

    let mut derived = args.to_vec();
    derived.push("--derive");
    assert_eq!(vbol(dir.path(), &derived).status.code(), Some(0));
    let doc = read_json(&dir.path().join("a.json"));
    assert_eq!(doc["summary"]["fail"], 0);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--suite", "cofactor,center-projection", "--n", "2", "--symbolic-k", "--out"];
    let mut bodies = Vec::new();
    for (prefix, threads) in [("x", "1"), ("y", "4")] {
        let mut a = args.to_vec();
        a.extend([prefix, "--threads", threads]);
        assert_eq!(vbol(dir.path(), &a).status.code(), Some(0));
        let json = std::fs::read(dir.path().join(format!("{prefix}.json"))).unwrap();
        let md = std::fs::read(dir.path().join(format!("{prefix}.md"))).unwrap();
        let timings = read_json(&dir.path().join(format!("{prefix}.timings.json")));
        bodies.push((json, md, timings["report_sha256"].clone()));
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn config_file_and_flags_merge() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        r#"{"suite": ["bol-extension"], "n": 1, "j": 2, "l": 2, "index": [[3, 1], ["1", "1"]], "derive": true, "out": "from-file"}"#,
    )
    .unwrap();
    let out = vbol(dir.path(), &["--config", "c.json", "--l", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = read_json(&dir.path().join("from-file.json"));
    assert_eq!(doc["params"]["l"], 1);
    assert_eq!(doc["params"]["index"], "3,1;1,1");
    let c = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "constant_c").unwrap().clone();
    assert_eq!(c["status"], "derived");
    assert_eq!(c["actual"], "2*2pi_i");
}

fn config(suites: Vec<Suite>) -> SuiteConfig {
    let fc = FileConfig {
        suite: Some(OneOrMany::Many(suites)),
        ..FileConfig::default()
    };
    SuiteConfig::resolve(fc, None).unwrap()
}

#[test]
fn empty_report_has_zero_summary() {
    let r = Report::new("none".into(), serde_json::json!({}), Vec::new());
    let doc: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(doc["checks"], serde_json::json!([]));
    assert_eq!(doc["summary"], serde_json::json!({"pass": 0, "fail": 0, "derived": 0}));
    assert_eq!(r.to_markdown().lines().filter(|l| l.starts_with("| ")).count(), 1);
}

#[test]
fn one_failing_record_propagates() {
    let p = [("n".to_string(), "1".to_string())].into_iter().collect();
    let checks = vec![
        CheckRecord::compare("s", "a", &p, 1, Source::Stated, 1),
        CheckRecord::compare("s", "b", &p, 1, Source::Stated, 2),
        CheckRecord::derived("s", "c", &p, "x"),
    ];
    let r = Report::new("s".into(), serde_json::json!({}), checks);
    assert_eq!((r.summary.pass, r.summary.fail, r.summary.derived), (1, 1, 1));
    assert_eq!(r.checks.iter().find(|c| c.name == "b").unwrap().status, Status::Fail);
}

#[test]
fn records_are_sorted_by_suite_then_params() {
    let (report, code) = vbol::run(&config(vec![Suite::DeltaEigen, Suite::SiegelRecovery]));
    assert_eq!(code, 0);
    let keys: Vec<_> = report
        .checks
        .iter()
        .map(|c| (c.suite.clone(), c.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(","), c.name.clone()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn algebra_sanity_passes() {
    let (report, code) = vbol::run(&config(vec![Suite::AlgebraSanity]));
    assert_eq!(code, 0, "{}", report.to_markdown());
    assert!(report.checks.iter().any(|c| c.name == "positive_roots_short_long" && c.actual == "6 3"));
}
