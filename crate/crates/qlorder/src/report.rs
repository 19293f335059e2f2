//! Machine-readable check reports.
//!
//! Every verification entry point returns a [`CheckReport`]; the CLI
//! aggregates them into a [`Report`].  The `canonical` section of a report
//! is fully determined by the presentation and the bounds — no timestamps,
//! no hash-map iteration order — so repeated runs serialize to identical
//! bytes.  Wall-clock time lives outside the canonical section.

use serde::Serialize;

/// Outcome of one check, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// One named check: what was checked, over how many cases, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Bounds and parameters the check ran with, as stable `key=value` pairs.
    pub params: Vec<String>,
    pub cases: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, params: Vec<String>, cases: usize) -> Self {
        CheckReport {
            name: name.into(),
            params,
            cases,
            verdict: Verdict::Pass,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        params: Vec<String>,
        cases: usize,
        witness: impl Into<String>,
    ) -> Self {
        CheckReport {
            name: name.into(),
            params,
            cases,
            verdict: Verdict::Fail {
                witness: witness.into(),
            },
        }
    }

    /// Human-readable single line, as printed by the CLI.
    pub fn line(&self) -> String {
        let params = if self.params.is_empty() {
            String::new()
        } else {
            format!(" [{}]", self.params.join(" "))
        };
        match &self.verdict {
            Verdict::Pass => format!("PASS {}{params} ({} cases)", self.name, self.cases),
            Verdict::Fail { witness } => {
                format!("FAIL {}{params} ({} cases) witness: {witness}", self.name, self.cases)
            }
        }
    }
}

/// Canonical report section: byte-identical across repeated runs.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub presentation: String,
    pub checks: Vec<CheckReport>,
    /// `pass`, `fail`, `unsupported`, `insufficient_truncation`, or
    /// `error` (the command could not run at all).
    pub outcome: String,
    /// Free-form result lines for value-producing commands (normal forms,
    /// joins, exported words); deterministic.
    pub results: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, presentation: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            presentation: presentation.into(),
            checks: Vec::new(),
            outcome: "pass".into(),
            results: Vec::new(),
        }
    }

    pub fn push_check(&mut self, check: CheckReport) {
        if !check.verdict.passed() && self.outcome == "pass" {
            self.outcome = "fail".into();
        }
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.outcome == "pass"
    }

    /// Canonical JSON bytes of this report.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Report plus non-canonical run metadata, the shape written by `--json`.
#[derive(Debug, Serialize)]
pub struct TimedReport {
    pub canonical: Report,
    pub elapsed_ms: u128,
}
