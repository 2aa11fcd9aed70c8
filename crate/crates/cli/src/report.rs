//! JSON and Markdown rendering of job outcomes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::jobs::{Outcome, Status};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn new(command: &str, mut outcomes: Vec<Outcome>) -> Self {
        outcomes.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = outcomes.iter().all(Outcome::passed);
        Report { command: command.into(), passed, outcomes }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# howe {}\n", self.command);
        let _ = writeln!(s, "| job | criterion | status |\n|---|---|---|");
        for o in &self.outcomes {
            let c = o.criterion.map(|c| c.to_string()).unwrap_or_default();
            let _ = writeln!(s, "| {} | {} | {} |", o.id, c, status_word(o.status));
        }
        for o in &self.outcomes {
            let _ = writeln!(s, "\n## {}\n\n{}\n", o.id, o.title);
            let _ = writeln!(s, "| check | expected | measured | ok |\n|---|---|---|---|");
            for c in &o.checks {
                let _ = writeln!(s, "| {} | {} | {} | {} |", cell(&c.name), cell(&c.expected), cell(&c.measured), if c.ok { "yes" } else { "NO" });
            }
        }
        s
    }

    /// One line per outcome, then the failing checks.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            let _ = writeln!(s, "{:<8} {}", status_word(o.status), o.id);
            for c in o.failures() {
                if c.expected.is_empty() {
                    let _ = writeln!(s, "         {}: {}", c.name, c.measured);
                } else {
                    let _ = writeln!(s, "         {}: expected {}, got {}", c.name, c.expected, c.measured);
                }
            }
        }
        s
    }

    pub fn write(&self, dir: &Path, timings: &[(String, u128)]) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json())?;
        fs::write(dir.join("report.md"), self.to_markdown())?;
        let t: Vec<_> = timings.iter().map(|(id, ms)| serde_json::json!({"job": id, "wall_ms": ms})).collect();
        fs::write(dir.join("timings.json"), serde_json::to_string_pretty(&t).expect("timings serialize") + "\n")
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Measured => "MEASURED",
        Status::Error => "ERROR",
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}
