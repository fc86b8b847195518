use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Admissible range of one observed number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
}

impl Expectation {
    pub fn at_most(max: f64) -> Self {
        Self {
            min: None,
            max: Some(max),
        }
    }

    pub fn at_least(min: f64) -> Self {
        Self {
            min: Some(min),
            max: None,
        }
    }

    pub fn between(min: f64, max: f64) -> Self {
        Self {
            min: Some(min),
            max: Some(max),
        }
    }

    pub fn exactly(v: f64) -> Self {
        Self::between(v, v)
    }

    /// NaN never satisfies an expectation.
    pub fn admits(&self, v: f64) -> bool {
        !v.is_nan() && self.min.is_none_or(|m| v >= m) && self.max.is_none_or(|m| v <= m)
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub observed: BTreeMap<String, f64>,
    pub expected: BTreeMap<String, Expectation>,
    pub notes: String,
}

impl Verdict {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            observed: BTreeMap::new(),
            expected: BTreeMap::new(),
            notes: String::new(),
        }
    }

    pub fn observe(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.observed.insert(key.into(), value);
        self.passed = Self::judge(&self.observed, &self.expected);
        self
    }

    /// Records `value` and the range it must fall in.
    pub fn require(&mut self, key: impl Into<String>, value: f64, range: Expectation) -> &mut Self {
        let key = key.into();
        self.expected.insert(key.clone(), range);
        self.observe(key, value)
    }

    pub fn note(&mut self, text: impl AsRef<str>) -> &mut Self {
        if !self.notes.is_empty() {
            self.notes.push(' ');
        }
        self.notes.push_str(text.as_ref());
        self
    }

    /// Every expected key must be observed and admitted.
    pub fn judge(
        observed: &BTreeMap<String, f64>,
        expected: &BTreeMap<String, Expectation>,
    ) -> bool {
        expected
            .iter()
            .all(|(k, e)| observed.get(k).is_some_and(|&v| e.admits(v)))
    }

    /// Recomputes `passed` from the recorded numbers.
    pub fn rejudged(&self) -> bool {
        Self::judge(&self.observed, &self.expected)
    }
}
