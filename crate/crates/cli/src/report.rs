use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Derived,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Derived => "derived",
        })
    }
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Quoted from the source identity.
    Stated,
    /// Follows from the definitions.
    Structural,
    /// Computed by an independent route in this tool.
    Derived,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Stated => "stated",
            Source::Structural => "structural",
            Source::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub value: String,
    pub source: Source,
}

pub type Params = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub params: Params,
    pub status: Status,
    pub expected: Expected,
    pub actual: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckRecord {
    /// Pass iff the renderings agree.
    pub fn compare(suite: &str, name: &str, params: &Params, expected: impl fmt::Display, source: Source, actual: impl fmt::Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Self::with_status(suite, name, params, status, expected, source, actual)
    }

    /// A machine-derived constant compared against a stated one. Under
    /// `derive` the record is informational.
    pub fn constant(suite: &str, name: &str, params: &Params, stated: impl fmt::Display, actual: impl fmt::Display, derive: bool) -> Self {
        let mut r = Self::compare(suite, name, params, stated, Source::Stated, actual);
        if derive {
            r.status = Status::Derived;
        }
        r
    }

    /// A value with no independent expectation.
    pub fn derived(suite: &str, name: &str, params: &Params, actual: impl fmt::Display) -> Self {
        Self::with_status(suite, name, params, Status::Derived, "-".into(), Source::Derived, actual.to_string())
    }

    pub fn with_status(suite: &str, name: &str, params: &Params, status: Status, expected: String, source: Source, actual: String) -> Self {
        CheckRecord {
            suite: suite.into(),
            name: name.into(),
            params: params.clone(),
            status,
            expected: Expected { value: expected, source },
            actual,
            elapsed: Duration::ZERO,
        }
    }

    /// Sort key: suite, then params, then name.
    fn key(&self) -> (String, String, String) {
        let p = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
        (self.suite.clone(), p, self.name.clone())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub derived: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: String, params: serde_json::Value, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by_key(|c| c.key());
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Derived => summary.derived += 1,
            }
        }
        Report {
            suite,
            params,
            checks,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# vbol report: {}\n", self.suite);
        let _ = writeln!(out, "Parameters: `{}`\n", self.params);
        let _ = writeln!(
            out,
            "Summary: {} pass, {} fail, {} derived\n",
            self.summary.pass, self.summary.fail, self.summary.derived
        );
        out.push_str("| suite | check | params | status | expected | source | actual |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let params = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ");
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                cell(&c.suite),
                cell(&c.name),
                cell(&params),
                c.status,
                cell(&c.expected.value),
                c.expected.source,
                cell(&c.actual)
            );
        }
        out
    }

    /// Timing sidecar; kept out of the report body so the body is stable.
    pub fn timings_json(&self, total: Duration) -> String {
        let body_hash = hex(&Sha256::digest(self.to_json().as_bytes()));
        let rows: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "suite": c.suite,
                    "name": c.name,
                    "params": c.params,
                    "elapsed_ms": c.elapsed.as_secs_f64() * 1e3,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "report_sha256": body_hash,
            "total_ms": total.as_secs_f64() * 1e3,
            "checks": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("timings serialize");
        s.push('\n');
        s
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
