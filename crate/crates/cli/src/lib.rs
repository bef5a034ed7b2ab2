//! Runs the verification checks of `siegel-cy` as named suites and renders
//! the results as text or JSON.

pub mod suites;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

pub use suites::Job;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Report,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Report => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub data: Value,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, paper_ref: impl Into<String>, status: Status, data: Value) -> Self {
        CheckRecord { id: id.into(), paper_ref: paper_ref.into(), status, data }
    }

    pub fn error(id: impl Into<String>, paper_ref: impl Into<String>, err: impl std::fmt::Display) -> Self {
        CheckRecord::new(id, paper_ref, Status::Fail, serde_json::json!({ "error": err.to_string() }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    #[serde(rename = "N")]
    pub truncation: u32,
    pub seed: u64,
    pub tol: f64,
    #[serde(skip)]
    pub cache: Option<PathBuf>,
}

impl Default for Params {
    fn default() -> Self {
        Params { truncation: 12, seed: 0, tol: 1e-8, cache: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub report: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub params: Params,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    /// Sorts the records by id and recounts the summary.
    pub fn new(params: Params, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Report => summary.report += 1,
            }
        }
        SuiteReport { params, checks, summary }
    }

    pub fn success(&self) -> bool {
        self.summary.fail == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Selector {
    Chars,
    Series,
    Relations,
    Boundary,
    Variety,
    Numeric,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Runs every job of the selected suites on the rayon pool.
pub fn run_suite(selector: Selector, params: &Params) -> SuiteReport {
    let jobs = suites::jobs(selector);
    let records: Vec<Vec<CheckRecord>> = jobs.par_iter().map(|job| job(params)).collect();
    SuiteReport::new(params.clone(), records.into_iter().flatten().collect())
}

pub fn to_json(r: &SuiteReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let data = serde_json::to_string(&c.data).expect("data serializes");
        writeln!(out, "{}  {:<44} [{}] {}", c.status.label(), c.id, c.paper_ref, data).expect("string write");
    }
    writeln!(
        out,
        "N={} seed={} tol={:e}: {} passed, {} failed, {} reported",
        r.params.truncation, r.params.seed, r.params.tol, r.summary.pass, r.summary.fail, r.summary.report
    )
    .expect("string write");
    out
}

/// Renders the report in `format`; with a path the JSON form is also written there.
pub fn emit_report(r: &SuiteReport, format: Format, path: Option<&Path>) -> std::io::Result<String> {
    if let Some(p) = path {
        std::fs::write(p, to_json(r))?;
    }
    Ok(match format {
        Format::Text => to_text(r),
        Format::Json => to_json(r),
    })
}
