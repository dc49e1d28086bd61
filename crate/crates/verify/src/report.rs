use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Outcome of one check, as archived in run manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub scenario: String,
    /// The checked quantity is under "value"; other entries are context.
    pub measured: BTreeMap<String, f64>,
    pub threshold: f64,
    pub pass: bool,
    pub grid: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(check: &str, scenario: &str, value: f64, threshold: f64, pass: bool) -> Self {
        let mut measured = BTreeMap::new();
        measured.insert("value".to_string(), value);
        Self {
            check: check.to_string(),
            scenario: scenario.to_string(),
            measured,
            threshold,
            pass,
            grid: BTreeMap::new(),
        }
    }

    /// Pass iff value ≤ threshold.
    pub fn at_most(check: &str, scenario: &str, value: f64, threshold: f64) -> Self {
        Self::new(check, scenario, value, threshold, value <= threshold)
    }

    pub fn value(&self) -> f64 {
        self.measured["value"]
    }

    pub fn with_measure(mut self, key: &str, v: f64) -> Self {
        self.measured.insert(key.to_string(), v);
        self
    }

    pub fn with_grid(mut self, key: &str, v: impl ToString) -> Self {
        self.grid.insert(key.to_string(), v.to_string());
        self
    }
}
