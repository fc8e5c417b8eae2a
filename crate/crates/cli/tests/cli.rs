use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn logbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logbs")).env_remove("LOGBS_CACHE_DIR").args(args).output().expect("binary runs")
}

fn job(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bfun_of_cubic() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "x3.job", "vars = [x]\nF = [x^3]\nK = [[1]]\n");
    let out = logbs(&["bfun", "--job", s(&j)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["results"]["factored"], "(s + 1/3)*(s + 2/3)*(s + 1)");
    let roots: Vec<&str> = r["results"]["roots"].as_array().unwrap().iter().map(|x| x["root"].as_str().unwrap()).collect();
    assert_eq!(roots, ["-1/3", "-2/3", "-1"]);
}

#[test]
fn bs_of_two_coordinates() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "xy.job", "vars = [x, y]\nF = [x, y]\nK = [[1, 1]]\n");
    let out = logbs(&["bs", "--job", s(&j)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let mut factors: Vec<&str> = r["results"]["factored"][0].as_str().unwrap().split('*').collect();
    factors.sort();
    assert_eq!(factors, ["(s1 + 1)", "(s2 + 1)"]);
    let cert = &r["certificates"][0];
    assert_eq!(cert["terms"].as_array().unwrap().len(), 1);
    assert_eq!(cert["terms"][0]["operator"], "dx * dy");
    assert_eq!(cert["terms"][0]["exponent"], serde_json::json!([1, 1]));
    assert!(r["checks"].as_object().unwrap().values().all(|c| c["passed"] == true));
}

#[test]
fn check_replays_and_detects_tampering() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "xy.job", "vars = [x, y]\nF = [x*y]\nK = [[1]]\n");
    let out = logbs(&["report", "--job", s(&j), "--jmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = dir.path().join("report.json");
    std::fs::write(&report, &out.stdout).unwrap();
    let ok = logbs(&["check", "--report", s(&report)]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));
    let summary = json(&ok);
    assert!(summary["certificates"].as_u64().unwrap() >= 3);
    assert!(summary["annihilator_elements"].as_u64().unwrap() >= 1);

    let mut r = json(&out);
    r["certificates"][0]["terms"][0]["operator"] = "2 * dx * dy".into();
    std::fs::write(&report, serde_json::to_vec(&r).unwrap()).unwrap();
    let bad = logbs(&["check", "--report", s(&report)]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["failures"].as_array().unwrap().len(), 1);

    let mut r = json(&out);
    r["results"]["annihilator"][0] = "dx".into();
    std::fs::write(&report, serde_json::to_vec(&r).unwrap()).unwrap();
    assert_eq!(logbs(&["check", "--report", s(&report)]).status.code(), Some(1));
}

#[test]
fn localized_result_is_flagged() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "loc.job", "vars = [x, y]\nF = [x, y]\nK = [[1, 1]]\nm = [1, 0]\n");
    let out = logbs(&["bs-local", "--job", s(&j)]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["status"], "flagged");
    assert_eq!(r["results"]["generators"][0], "s2 + 1");
    assert!(r["flags"].as_array().unwrap().iter().any(|f| f == "heuristic-stabilization"));
    assert_eq!(logbs(&["bs-local", "--job", s(&j), "--allow-flagged"]).status.code(), Some(0));
}

#[test]
fn parse_errors_carry_a_position() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "bad.job", "vars = [x]\nF = [x^2 +* 1]\nK = [[1]]\n");
    let out = logbs(&["bs", "--job", s(&j)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.job:2:11"), "{err}");
}

#[test]
fn missing_job_is_an_error() {
    assert_eq!(logbs(&["bs"]).status.code(), Some(1));
}

#[test]
fn warm_cache_gives_identical_reports() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().join("cache");
    let j = job(&dir, "cusp.job", "vars = [x, y]\nF = [x^2 - y^3]\nK = [[1]]\n");
    let plain = logbs(&["bs", "--job", s(&j)]);
    let cold = logbs(&["bs", "--job", s(&j), "--cache", s(&cache)]);
    let warm = logbs(&["bs", "--job", s(&j), "--cache", s(&cache)]);
    let again = logbs(&["bs", "--job", s(&j), "--cache", s(&cache)]);
    assert_eq!(warm.stdout, again.stdout);
    let (mut c, mut w) = (json(&cold), json(&warm));
    assert_eq!(c["cache"]["hits"], 0);
    assert!(w["cache"]["hits"].as_u64().unwrap() > 0);
    assert_eq!(w["cache"]["misses"], 0);
    c.as_object_mut().unwrap().remove("cache");
    w.as_object_mut().unwrap().remove("cache");
    assert_eq!(c, w);
    assert_eq!(c, json(&plain));
}

#[test]
fn batch_runs_every_job() {
    let dir = TempDir::new().unwrap();
    let a = job(&dir, "a.job", "vars = [x]\nF = [x]\nK = [[1]]\n");
    let b = job(&dir, "b.job", "vars = [x, y]\nF = [x^2 + y^2]\nK = [[1]]\n");
    let out = logbs(&["report", "--batch", s(&a), s(&b), "--jmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let reports = r.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["job"]["F"][0], "x");
    assert_eq!(reports[1]["results"]["bs"]["factored"][0], "(s + 1)^2");
    let path = dir.path().join("batch.json");
    std::fs::write(&path, &out.stdout).unwrap();
    assert_eq!(logbs(&["check", "--report", s(&path)]).status.code(), Some(0));
}

#[test]
fn tower_levels_and_text_output() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "x.job", "vars = [x]\nF = [x]\nK = [[1]]\n");
    let out = logbs(&["tower", "--job", s(&j), "--jmax", "3"]);
    let r = json(&out);
    let levels = r["results"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert_eq!(levels[2]["factored"][0], "(s + 1)*(s + 2)*(s + 3)");
    assert_eq!(r["exp_components"].as_array().unwrap().len(), 1);
    let text = logbs(&["tower", "--job", s(&j), "--jmax", "2", "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("level 2: <(s + 1)*(s + 2)>"));
}

#[test]
fn timings_only_on_request() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "x.job", "vars = [x]\nF = [x]\nK = [[1]]\n");
    assert!(json(&logbs(&["bs", "--job", s(&j)])).get("timings").is_none());
    assert!(json(&logbs(&["bs", "--job", s(&j), "--timings"]))["timings"]["total"].is_number());
}

#[test]
fn timeout_still_emits_a_report() {
    let dir = TempDir::new().unwrap();
    let j = job(&dir, "cusp.job", "vars = [x, y]\nF = [x^2 - y^3]\nK = [[1]]\n");
    let out = logbs(&["bs", "--job", s(&j), "--timeout", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"], "time budget exhausted");
}
