//! Report assembly: one JSON document (sorted keys, deterministic under
//! `--stable`) and a human-readable table rendered from the same data.

use serde_json::{Map, Value};
use widthlab::{Check, CheckStatus};

/// A finished run: the command that ran, the effective parameters, and every
/// check it produced.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    /// Effective parameters, in display order (JSON output re-sorts keys).
    pub params: Vec<(String, Value)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), params: Vec::new(), checks: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.push((key.to_string(), value.into()));
    }

    /// (passed, failed, skipped) where skipped counts both skipped and
    /// not-applicable checks.
    pub fn summary(&self) -> (u64, u64, u64) {
        let mut passed = 0;
        let mut failed = 0;
        let mut skipped = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => passed += 1,
                CheckStatus::Fail => failed += 1,
                CheckStatus::Skipped | CheckStatus::NotApplicable => skipped += 1,
            }
        }
        (passed, failed, skipped)
    }

    /// JSON document with top-level keys `command`, `params`, `checks`,
    /// `summary`. serde_json maps are sorted, so serialization is canonical;
    /// `stable` additionally omits the per-check `elapsed-ms` field.
    pub fn to_json(&self, stable: bool) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::from(self.command.clone()));
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), v.clone());
        }
        root.insert("params".into(), Value::Object(params));
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut obj = Map::new();
                obj.insert("name".into(), Value::from(c.name.clone()));
                obj.insert("status".into(), Value::from(c.status.as_str()));
                obj.insert("details".into(), Value::from(c.details.clone()));
                if let Some(w) = &c.witness {
                    obj.insert("witness".into(), Value::from(w.clone()));
                }
                if !stable {
                    if let Some(e) = c.elapsed {
                        obj.insert("elapsed-ms".into(), Value::from(e.as_millis() as u64));
                    }
                }
                Value::Object(obj)
            })
            .collect();
        root.insert("checks".into(), Value::Array(checks));
        let (passed, failed, skipped) = self.summary();
        let mut summary = Map::new();
        summary.insert("passed".into(), Value::from(passed));
        summary.insert("failed".into(), Value::from(failed));
        summary.insert("skipped".into(), Value::from(skipped));
        root.insert("summary".into(), Value::Object(summary));
        Value::Object(root)
    }

    /// Human-readable table; the same content as the JSON document.
    pub fn render(&self, stable: bool) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if !self.params.is_empty() {
            let parts: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            writeln!(out, "params: {}", parts.join(" ")).unwrap();
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
                CheckStatus::NotApplicable => "N/A ",
            };
            let elapsed = match (stable, c.elapsed) {
                (false, Some(e)) => format!("  [{} ms]", e.as_millis()),
                _ => String::new(),
            };
            writeln!(out, "  {status}  {:width$}  {}{elapsed}", c.name, c.details).unwrap();
            if let Some(w) = &c.witness {
                writeln!(out, "        {:width$}  witness: {w}", "").unwrap();
            }
        }
        let (passed, failed, skipped) = self.summary();
        writeln!(out, "summary: {passed} passed, {failed} failed, {skipped} skipped").unwrap();
        out
    }
}
