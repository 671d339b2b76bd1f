//! Pass/fail record shared by the verification suites.

use serde::{Deserialize, Serialize};

/// Failures kept per verdict; the count is always exact.
const MAX_REPORTED: usize = 50;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, checked: 0, failure_count: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }
}
