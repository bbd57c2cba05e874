use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Command, Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One unit of work (an algebra, a `Z`, a flow grid) with its checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub key: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub evidence: Value,
}

impl CaseReport {
    pub fn new(key: impl Into<String>) -> Self {
        CaseReport {
            key: key.into(),
            passed: true,
            checks: Vec::new(),
            evidence: Value::Null,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            detail,
        });
    }

    /// Records an error from a computation that should have succeeded.
    pub fn check_result<T>(&mut self, name: impl Into<String>, r: ahs_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, Some(e.to_string()));
                None
            }
        }
    }

    pub fn evidence(&mut self, key: &str, value: impl Serialize) {
        if self.evidence.is_null() {
            self.evidence = Value::Object(Default::default());
        }
        let v = serde_json::to_value(value).expect("evidence serializes");
        self.evidence
            .as_object_mut()
            .expect("object")
            .insert(key.to_string(), v);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub checks: usize,
    pub failed_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub config: RunConfig,
    pub passed: bool,
    pub summary: Summary,
    pub cases: Vec<CaseReport>,
    /// Only present with `--timings`, so default reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(config: RunConfig, mut cases: Vec<CaseReport>) -> Self {
        cases.sort_by(|a, b| a.key.cmp(&b.key));
        let checks = cases.iter().map(|c| c.checks.len()).sum();
        let failed_checks = cases
            .iter()
            .flat_map(|c| &c.checks)
            .filter(|c| !c.passed)
            .count();
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            passed: cases.iter().all(|c| c.passed),
            summary: Summary {
                cases: cases.len(),
                checks,
                failed_checks,
            },
            config,
            cases,
            wall_time_ms: None,
        }
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv if self.config.command == Command::Trajectory => trajectory_csv(self),
            Format::Csv => {
                let mut s = String::from("case,check,passed,detail\n");
                for c in &self.cases {
                    for ch in &c.checks {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            csv_field(&c.key),
                            csv_field(&ch.name),
                            ch.passed,
                            csv_field(ch.detail.as_deref().unwrap_or(""))
                        );
                    }
                }
                s
            }
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let _ = writeln!(s, "{} {}", verdict(c.passed), c.key);
            for ch in &c.checks {
                if !ch.passed || self.config.command != Command::VerifyAll {
                    let _ = write!(s, "    {} {}", verdict(ch.passed), ch.name);
                    if let Some(d) = &ch.detail {
                        let _ = write!(s, ": {d}");
                    }
                    s.push('\n');
                }
            }
        }
        let _ = writeln!(
            s,
            "overall: {} ({} cases, {} checks, {} failed)",
            verdict(self.passed),
            self.summary.cases,
            self.summary.checks,
            self.summary.failed_checks
        );
        if let Some(ms) = self.wall_time_ms {
            let _ = writeln!(s, "wall time: {ms} ms");
        }
        s
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `t,y1,…,yn` with decimal renderings; empty cells where the point left
/// the chart.
fn trajectory_csv(report: &SuiteReport) -> String {
    let mut s = String::new();
    for case in &report.cases {
        let Some(rows) = case.evidence.get("decimal_rows").and_then(Value::as_array) else {
            continue;
        };
        let n = case.evidence.get("n").and_then(Value::as_u64).unwrap_or(0);
        let header: Vec<String> = std::iter::once("t".to_string())
            .chain((1..=n).map(|i| format!("y{i}")))
            .collect();
        let _ = writeln!(s, "{}", header.join(","));
        for row in rows {
            let cells: Vec<&str> = row
                .as_array()
                .map(|r| r.iter().map(|v| v.as_str().unwrap_or("")).collect())
                .unwrap_or_default();
            let _ = writeln!(s, "{}", cells.join(","));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_conjunction() {
        let mut a = CaseReport::new("b");
        a.check("x", true, None);
        let mut b = CaseReport::new("a");
        b.check("y", true, None);
        let r = SuiteReport::new(RunConfig::new(Command::Verify), vec![a.clone(), b.clone()]);
        assert!(r.passed);
        assert_eq!(r.cases[0].key, "a");
        b.check("z", false, Some("broken".into()));
        let r = SuiteReport::new(RunConfig::new(Command::Verify), vec![a, b]);
        assert!(!r.passed);
        assert_eq!(r.summary.failed_checks, 1);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("[g_1, g_1] = 0"), "\"[g_1, g_1] = 0\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
