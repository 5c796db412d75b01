//! Uniform pass/fail check records.
//!
//! Every certificate and verification routine in this crate reports its
//! findings as a list of [`Check`] values: a stable kebab-case name, a status,
//! a human-readable details string, and an optional witness (a counterexample
//! or a constructed object worth showing). The CLI serializes these directly.

use std::time::Duration;

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not run (usually because a cap or an earlier failure made it moot).
    Skipped,
    /// The check's hypothesis does not apply to these inputs.
    NotApplicable,
}

impl CheckStatus {
    /// Stable lower-case label used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
            CheckStatus::NotApplicable => "not-applicable",
        }
    }
}

/// A single named verification result.
#[derive(Debug, Clone)]
pub struct Check {
    /// Stable kebab-case identifier, e.g. `"fixed-points-trivial"`.
    pub name: String,
    pub status: CheckStatus,
    /// One-line explanation of what was verified and the measured outcome.
    pub details: String,
    /// Counterexample or constructed witness, when one is worth reporting.
    pub witness: Option<String>,
    /// Wall-clock time of the underlying computation, when measured.
    pub elapsed: Option<Duration>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: CheckStatus, details: impl Into<String>) -> Self {
        Check { name: name.into(), status, details: details.into(), witness: None, elapsed: None }
    }

    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::Pass, details)
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::Fail, details)
    }

    pub fn skipped(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::Skipped, details)
    }

    pub fn not_applicable(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check::new(name, CheckStatus::NotApplicable, details)
    }

    /// Pass/fail chosen by a boolean condition.
    pub fn expect(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Check::new(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, details)
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = Some(elapsed);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// True when no check in the list failed (skips and not-applicable are fine).
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| !c.failed())
}

/// Prefix every check name with `prefix/` (used when aggregating sub-reports).
pub fn namespaced(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c
        })
        .collect()
}
