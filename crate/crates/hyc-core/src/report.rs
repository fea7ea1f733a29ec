//! Structured pass/fail reports produced by the verification entry points.

use std::collections::BTreeMap;

use serde::Serialize;

/// A single named inequality check: `lhs ≤ rhs + tol`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Short machine-readable identifier, unique within a report.
    pub name: String,
    /// The quantity being bounded.
    pub lhs: f64,
    /// The bound it is compared against.
    pub rhs: f64,
    /// Absolute slack added to `rhs` before comparing.
    pub tol: f64,
    pub passed: bool,
}

/// Counts of passed and failed checks.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// Outcome of one verification suite run.
///
/// Reports are plain data: building one never panics, and serialising one
/// with `serde_json` yields a stable, human-diffable document.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Which suite produced this report.
    pub suite: String,
    /// Seed that reproduces the run exactly.
    pub seed: u64,
    /// Free-form parameters recorded for provenance (sorted keys).
    pub params: BTreeMap<String, String>,
    /// Every individual check, in execution order.
    pub checks: Vec<Check>,
    pub summary: Summary,
    /// Largest `lhs / rhs` ratio observed across checks where `rhs > 0`;
    /// a quick sharpness indicator (1.0 means some check was tight).
    pub max_observed_ratio: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed,
            params: BTreeMap::new(),
            checks: Vec::new(),
            summary: Summary::default(),
            max_observed_ratio: None,
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    /// Record the check `lhs ≤ rhs + tol` and return whether it passed.
    pub fn check(&mut self, name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> bool {
        let passed = lhs <= rhs + tol;
        if passed {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        if rhs > 0.0 && lhs.is_finite() {
            let ratio = lhs / rhs;
            self.max_observed_ratio = Some(match self.max_observed_ratio {
                Some(m) => m.max(ratio),
                None => ratio,
            });
        }
        self.checks.push(Check {
            name: name.into(),
            lhs,
            rhs,
            tol,
            passed,
        });
        passed
    }

    /// True when every recorded check passed.
    pub fn is_pass(&self) -> bool {
        self.summary.failed == 0
    }
}
