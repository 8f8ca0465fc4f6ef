//! Verification reports: one JSON object per check.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check. `status` is `pass` iff `expected == computed`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, i64>,
    pub expected: BTreeMap<String, Value>,
    pub computed: BTreeMap<String, Value>,
    pub status: Status,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            expected: BTreeMap::new(),
            computed: BTreeMap::new(),
            status: Status::Fail,
            elapsed_ms: 0,
            notes: BTreeMap::new(),
        }
    }

    pub fn param<T: TryInto<i64>>(mut self, key: &str, value: T) -> Self {
        let v = value.try_into().unwrap_or_else(|_| panic!("parameter {key} does not fit i64"));
        self.params.insert(key.to_string(), v);
        self
    }

    pub fn expect<T: Into<Value>>(mut self, key: &str, value: T) -> Self {
        self.expected.insert(key.to_string(), value.into());
        self
    }

    pub fn compute<T: Into<Value>>(mut self, key: &str, value: T) -> Self {
        self.computed.insert(key.to_string(), value.into());
        self
    }

    /// Both sides at once, for quantities that are pinned rather than predicted.
    pub fn check<T: Into<Value>>(self, key: &str, expected: T, computed: T) -> Self {
        self.expect(key, expected).compute(key, computed)
    }

    pub fn note<T: Into<Value>>(mut self, key: &str, value: T) -> Self {
        self.notes.insert(key.to_string(), value.into());
        self
    }

    pub fn finish(mut self) -> Self {
        self.status = if self.expected == self.computed { Status::Pass } else { Status::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn sort_key(&self) -> (&str, Vec<(&str, i64)>) {
        (&self.suite, self.params.iter().map(|(k, v)| (k.as_str(), *v)).collect())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_field_equality() {
        let r = Report::new("x").param("n", 3).check("a", 1, 1).finish();
        assert!(r.passed());
        let r = Report::new("x").expect("a", 1).compute("a", 2).finish();
        assert!(!r.passed());
        let r = Report::new("x").expect("a", 1).finish();
        assert!(!r.passed());
    }

    #[test]
    fn json_has_fixed_key_order() {
        let r = Report::new("euler").param("t", 1).param("n", 4).check("chi", 2, 2).finish();
        assert_eq!(
            r.to_json_line(),
            r#"{"suite":"euler","params":{"n":4,"t":1},"expected":{"chi":2},"computed":{"chi":2},"status":"pass","elapsed_ms":0}"#
        );
    }

    #[test]
    fn sorting_is_by_suite_then_numeric_params() {
        let mut v =
            vec![Report::new("b").param("t", 1), Report::new("a").param("t", 10), Report::new("a").param("t", 2)];
        sort_reports(&mut v);
        let keys: Vec<(String, i64)> = v.iter().map(|r| (r.suite.clone(), r.params["t"])).collect();
        assert_eq!(keys, vec![("a".into(), 2), ("a".into(), 10), ("b".into(), 1)]);
    }
}
