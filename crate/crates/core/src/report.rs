//! Pass/fail reports shared by every verification routine.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Which of the two error measures a report is gated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check: String,
    pub samples: usize,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub pass: bool,
    pub tolerance: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub values: BTreeMap<String, f64>,
}

impl VerificationReport {
    /// Returns `true` when `label` is listed among the failures.
    pub fn failed(&self, label: &str) -> bool {
        self.failures.iter().any(|f| f.starts_with(label))
    }
}

/// Accumulates per-sample errors into a [`VerificationReport`].
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    check: String,
    tolerance: f64,
    gate: Gate,
    seed: u64,
    samples: usize,
    max_abs: f64,
    max_rel: f64,
    failures: Vec<String>,
    values: BTreeMap<String, f64>,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, tolerance: f64, gate: Gate, seed: u64) -> Self {
        ReportBuilder {
            check: check.into(),
            tolerance,
            gate,
            seed,
            samples: 0,
            max_abs: 0.0,
            max_rel: 0.0,
            failures: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    /// Records one comparison. `scale` is the denominator for the relative
    /// error; pass `1.0` when only absolute error matters.
    pub fn record(&mut self, label: impl AsRef<str>, abs_err: f64, scale: f64) -> bool {
        self.samples += 1;
        let rel = abs_err / scale.abs();
        // NaN compares false and therefore fails.
        let gated = match self.gate {
            Gate::Absolute => abs_err,
            Gate::Relative => rel,
        };
        let ok = gated <= self.tolerance;
        if abs_err.is_nan() || abs_err > self.max_abs {
            self.max_abs = abs_err;
        }
        if rel.is_nan() || rel > self.max_rel {
            self.max_rel = rel;
        }
        if !ok {
            self.failures.push(format!("{}: err {gated:e}", label.as_ref()));
        }
        ok
    }

    /// Records a boolean condition that has no numeric error.
    pub fn require(&mut self, label: impl AsRef<str>, ok: bool) {
        self.samples += 1;
        if !ok {
            self.failures.push(label.as_ref().to_string());
        }
    }

    pub fn value(&mut self, key: impl Into<String>, v: f64) {
        self.values.insert(key.into(), v);
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            check: self.check,
            samples: self.samples,
            max_abs_err: self.max_abs,
            max_rel_err: self.max_rel,
            pass: self.failures.is_empty(),
            tolerance: self.tolerance,
            seed: self.seed,
            failures: self.failures,
            values: self.values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_errors_fail() {
        let mut b = ReportBuilder::new("x", 1.0, Gate::Absolute, 0);
        assert!(!b.record("nan", f64::NAN, 1.0));
        let r = b.finish();
        assert!(!r.pass);
        assert!(r.max_abs_err.is_nan());
    }

    #[test]
    fn relative_gate_uses_scale() {
        let mut b = ReportBuilder::new("x", 1e-3, Gate::Relative, 7);
        assert!(b.record("a", 1e-2, 100.0));
        assert!(!b.record("b", 1e-2, 1.0));
        let r = b.finish();
        assert_eq!(r.samples, 2);
        assert!(!r.pass);
        assert!(r.failed("b"));
        assert!(!r.failed("a"));
    }

    #[test]
    fn json_field_names() {
        let r = ReportBuilder::new("trig", 1e-13, Gate::Absolute, 3).finish();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check", "samples", "maxAbsErr", "maxRelErr", "pass", "tolerance", "seed"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v.get("failures").is_none());
    }
}
