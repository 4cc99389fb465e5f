//! Structured verification reports with a stable JSON rendering: identical
//! runs produce byte-identical documents apart from the timings block.

use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ModelEcho {
    pub two_s: u32,
    pub n: usize,
    pub seed: String,
    pub checks: Vec<String>,
    pub seed_rng: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// "exact" or "numeric".
    pub mode: &'static str,
    pub pass: bool,
    /// Residual witness: a string for exact checks, a number for numeric.
    pub residual: Value,
    pub details: Value,
}

impl CheckRecord {
    pub fn exact(name: impl Into<String>, pass: bool, residual: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            mode: "exact",
            pass,
            residual: Value::String(residual.into()),
            details: json!({}),
        }
    }

    pub fn numeric(name: impl Into<String>, pass: bool, residual: f64) -> Self {
        Self {
            name: name.into(),
            mode: "numeric",
            pass,
            residual: json!(residual),
            details: json!({}),
        }
    }

    /// A stage that legitimately did not run (its data dependency reported
    /// a negative but correct outcome). Not a failure.
    pub fn skipped(name: impl Into<String>, mode: &'static str, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            mode,
            pass: true,
            residual: Value::String("skipped".into()),
            details: json!({ "status": "skipped", "reason": reason.into() }),
        }
    }

    /// A stage that could not run because a dependency failed; counts as a
    /// failure for the exit code through the dependency itself.
    pub fn blocked(name: impl Into<String>, mode: &'static str, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            mode,
            pass: false,
            residual: Value::String("skipped".into()),
            details: json!({ "status": "skipped", "reason": reason.into() }),
        }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Environment {
    pub version: String,
    pub seeds: BTreeMap<String, u64>,
    pub timings: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub model: ModelEcho,
    pub checks: Vec<CheckRecord>,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// The JSON with the (run-dependent) timings block emptied; two runs of
    /// the same spec must agree byte-for-byte on this form.
    pub fn to_json_without_timings(&self) -> String {
        let mut clone = self.clone();
        clone.environment.timings = BTreeMap::new();
        let mut out = serde_json::to_string_pretty(&clone).expect("report serializes");
        out.push('\n');
        out
    }

    /// One human line per check on top of the JSON artifact.
    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let skipped = c
                    .details
                    .get("status")
                    .and_then(Value::as_str)
                    .map(|s| s == "skipped")
                    .unwrap_or(false);
                if skipped {
                    format!("{:<28} SKIP ({})", c.name, c.mode)
                } else {
                    format!("{:<28} {status} ({}, residual {})", c.name, c.mode, c.residual)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport {
            schema: SCHEMA_VERSION,
            model: ModelEcho {
                two_s: 1,
                n: 2,
                seed: "veronese".into(),
                checks: vec!["constraints".into()],
                seed_rng: 0,
            },
            checks: vec![CheckRecord::exact("constraints", true, "0")],
            environment: Environment {
                version: "test".into(),
                seeds: BTreeMap::from([("rng".into(), 0)]),
                timings: BTreeMap::from([("constraints".into(), 12)]),
            },
        }
    }

    #[test]
    fn json_is_stable_and_timings_strip() {
        let r = sample();
        assert_eq!(r.to_json(), r.to_json());
        let stripped = r.to_json_without_timings();
        assert!(!stripped.contains("\"constraints\": 12"));
        // field order is fixed by declaration order
        let json = r.to_json();
        let schema_pos = json.find("\"schema\"").unwrap();
        let model_pos = json.find("\"model\"").unwrap();
        let checks_pos = json.find("\"checks\"").unwrap();
        assert!(schema_pos < model_pos && model_pos < checks_pos);
    }

    #[test]
    fn pass_aggregation() {
        let mut r = sample();
        assert!(r.all_pass());
        r.checks.push(CheckRecord::numeric("spin.rank", false, 1.0));
        assert!(!r.all_pass());
        r.checks.pop();
        r.checks
            .push(CheckRecord::skipped("heisenberg", "exact", "no decomposition"));
        assert!(r.all_pass());
    }
}
