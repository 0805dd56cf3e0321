//! Machine-readable check reports shared by the library and the CLI.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// One verified identity or condition.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub id: String,
    /// What claim this entry checks, in words.
    pub locator: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl CheckEntry {
    pub fn new(
        id: impl Into<String>,
        locator: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
    ) -> Self {
        let expected = expected.into();
        let computed = computed.into();
        let pass = expected == computed;
        CheckEntry {
            id: id.into(),
            locator: locator.into(),
            expected,
            computed,
            pass,
        }
    }

    pub fn bool_check(id: impl Into<String>, locator: impl Into<String>, pass: bool) -> Self {
        CheckEntry {
            id: id.into(),
            locator: locator.into(),
            expected: "true".into(),
            computed: pass.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub generated_by: &'static str,
}

/// Full report for one command invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckEntry>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Report {
    pub fn new(command: impl Into<String>, args: Vec<String>, checks: Vec<CheckEntry>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            args,
            seed: None,
            checks,
            summary,
            meta: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_meta(mut self) -> Self {
        self.meta = Some(Meta {
            version: env!("CARGO_PKG_VERSION"),
            generated_by: "delpezzo",
        });
        self
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// One line per check, aligned for terminals.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "[{status}] {:<32} {:<48} expected {} computed {}\n",
                c.id, c.locator, c.expected, c.computed
            ));
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_match_entries() {
        let checks = vec![
            CheckEntry::new("a", "first", "1", "1"),
            CheckEntry::new("b", "second", "1", "2"),
        ];
        let r = Report::new("test", vec![], checks);
        assert_eq!(r.summary.total, 2);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert!(!r.all_pass());
    }
}
