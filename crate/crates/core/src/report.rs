//! Pass/fail records for verification suites.

use serde::Serialize;
use serde_json::{json, Value};

use crate::morphism::Morphism;

pub const SCHEMA: &str = "tl-verify-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub identity: String,
    pub parameters: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

impl CaseRecord {
    pub fn pass(identity: impl Into<String>, parameters: Value) -> CaseRecord {
        CaseRecord { identity: identity.into(), parameters, status: Status::Pass, lhs: None, rhs: None, diff: None }
    }

    pub fn fail(identity: impl Into<String>, parameters: Value, detail: impl Into<String>) -> CaseRecord {
        CaseRecord {
            identity: identity.into(),
            parameters,
            status: Status::Fail,
            lhs: None,
            rhs: None,
            diff: Some(detail.into()),
        }
    }

    pub fn check(identity: impl Into<String>, parameters: Value, ok: bool, detail: impl FnOnce() -> String) -> CaseRecord {
        if ok {
            Self::pass(identity, parameters)
        } else {
            Self::fail(identity, parameters, detail())
        }
    }

    /// Compares two morphisms; on failure the witness carries both sides
    /// and their difference.
    pub fn compare(identity: impl Into<String>, parameters: Value, lhs: &Morphism, rhs: &Morphism) -> CaseRecord {
        let identity = identity.into();
        if lhs == rhs {
            return Self::pass(identity, parameters);
        }
        let diff = match lhs.try_sub(rhs) {
            Ok(d) => d.to_text(),
            Err(e) => e.to_string(),
        };
        CaseRecord {
            identity,
            parameters,
            status: Status::Fail,
            lhs: Some(lhs.to_text()),
            rhs: Some(rhs.to_text()),
            diff: Some(diff),
        }
    }

    /// Like `compare` for values with a text form.
    pub fn compare_text<T: PartialEq + std::fmt::Display>(
        identity: impl Into<String>,
        parameters: Value,
        lhs: &T,
        rhs: &T,
    ) -> CaseRecord {
        if lhs == rhs {
            return Self::pass(identity, parameters);
        }
        CaseRecord {
            identity: identity.into(),
            parameters,
            status: Status::Fail,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            diff: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub parameters: Value,
    pub cases: Vec<CaseRecord>,
}

impl Report {
    pub fn new(suite: impl Into<String>, parameters: Value) -> Report {
        Report { suite: suite.into(), parameters, cases: Vec::new() }
    }

    pub fn push(&mut self, case: CaseRecord) {
        self.cases.push(case);
    }

    pub fn extend(&mut self, cases: impl IntoIterator<Item = CaseRecord>) {
        self.cases.extend(cases);
    }

    /// Appends the cases of another report, prefixing identities with its suite.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.cases {
            c.identity = format!("{}/{}", other.suite, c.identity);
            self.cases.push(c);
        }
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "suite": self.suite,
            "parameters": self.parameters,
            "summary": {
                "total": self.cases.len(),
                "passed": self.passed(),
                "failed": self.failed(),
            },
            "cases": self.cases,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_witness() {
        let mut r = Report::new("demo", json!({}));
        let a = Morphism::identity(2, false);
        let b = Morphism::e(1, 2).unwrap();
        r.push(CaseRecord::compare("same", json!({"n": 2}), &a, &a));
        r.push(CaseRecord::compare("different", json!({"n": 2}), &a, &b));
        assert_eq!((r.passed(), r.failed()), (1, 1));
        let v = r.to_json();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["cases"][0].get("lhs"), None);
        assert!(v["cases"][1]["diff"].as_str().unwrap().contains("2x2"));
    }
}
