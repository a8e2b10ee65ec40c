//! Machine-readable verdicts.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportOnly => "report-only",
        }
    }
}

/// Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    pub truncation: Option<u32>,
    pub runtime_ms: u64,
}

impl CheckReport {
    pub fn new(id: &str, statement: &str) -> Self {
        CheckReport {
            id: id.to_string(),
            statement: statement.to_string(),
            status: Status::ReportOnly,
            expected: Value::Null,
            computed: Value::Null,
            truncation: None,
            runtime_ms: 0,
        }
    }

    pub fn status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    pub fn pass_if(self, ok: bool) -> Self {
        self.status(Status::from_bool(ok))
    }

    pub fn expected(mut self, v: impl Into<Value>) -> Self {
        self.expected = v.into();
        self
    }

    pub fn computed(mut self, v: impl Into<Value>) -> Self {
        self.computed = v.into();
        self
    }

    pub fn truncation(mut self, d: u32) -> Self {
        self.truncation = Some(d);
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.runtime_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line for text output.
    pub fn line(&self) -> String {
        let tr = self.truncation.map(|d| format!(" D={d}")).unwrap_or_default();
        format!("{:<11} {}{} ({} ms)", self.status.as_str(), self.id, tr, self.runtime_ms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_is_fixed() {
        let r = CheckReport::new("a.b", "claim").pass_if(true).expected(1).computed(1).truncation(3);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"id":"a.b","statement":"claim","status":"pass","expected":1,"computed":1,"truncation":3,"runtime_ms":0}"#
        );
        let back: CheckReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn report_only_is_not_a_pass() {
        let r = CheckReport::new("x", "y");
        assert!(!r.passed());
        assert!(r.line().starts_with("report-only x"));
    }
}
