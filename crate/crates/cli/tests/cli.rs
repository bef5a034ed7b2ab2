use std::process::Command;

use serde_json::Value;
use siegel_cy_cli::{run_suite, to_json, to_text, Params, Selector, Status, SuiteReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_siegel-cy"))
}

#[test]
fn boundary_suite_lists_every_sextuple() {
    let r = run_suite(Selector::Boundary, &Params::default());
    let per: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with("boundary.sextuple_")).collect();
    assert_eq!(per.len(), 15);
    assert!(r.checks.iter().any(|c| c.id == "boundary.distribution" && c.status == Status::Pass));
    assert!(r.success());
}

#[test]
fn relations_hold_at_low_truncation() {
    let params = Params { truncation: 8, ..Params::default() };
    let r = run_suite(Selector::Relations, &params);
    for c in &r.checks {
        let identity = !c.id.starts_with("relations.action.") && !c.id.starts_with("relations.mutation.");
        if identity {
            assert_eq!(c.status, Status::Pass, "{}", c.id);
        }
        if c.id.starts_with("relations.mutation.") {
            assert_eq!(c.status, Status::Pass, "mutation {} went unnoticed", c.id);
        }
    }
    assert_eq!(r.checks.iter().filter(|c| c.id.starts_with("relations.mutation.")).count(), 8);
}

#[test]
fn json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = bin().args(["numeric", "--seed", "5", "--json"]).arg(p).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let (sa, sb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(sa, sb);
    let v: Value = serde_json::from_str(&sa).unwrap();
    assert_eq!(v["params"]["seed"], 5);
    assert_eq!(v["params"]["N"], 12);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["paper_ref"].is_string()));
}

#[test]
fn empty_report_has_zero_summary() {
    let r = SuiteReport::new(Params::default(), Vec::new());
    assert!(r.success());
    let v: Value = serde_json::from_str(&to_json(&r)).unwrap();
    assert_eq!(v["summary"], serde_json::json!({"pass": 0, "fail": 0, "report": 0}));
    assert!(to_text(&r).contains("0 passed, 0 failed, 0 reported"));
}

#[test]
fn exit_code_follows_failures() {
    let ok = bin().arg("chars").output().unwrap();
    assert!(ok.status.success());
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("[order of Sp(4, F2)]")));

    let out = bin().args(["variety", "--format", "json"]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let fails = v["summary"]["fail"].as_u64().unwrap();
    assert_eq!(out.status.success(), fails == 0);
}

#[test]
fn rejects_unknown_suite() {
    let out = bin().arg("nonsense").output().unwrap();
    assert!(!out.status.success());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let params = Params { truncation: 8, cache: Some(dir.path().to_path_buf()), ..Params::default() };
    let first = run_suite(Selector::Relations, &params);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = run_suite(Selector::Relations, &params);
    assert_eq!(to_json(&first), to_json(&second));
}
