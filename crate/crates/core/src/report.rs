//! Verification reports: one record per law, with a witness on failure.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;

/// A basis vector on which the two sides of a law differ, with both images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub basis_index: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub anchor: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// Conjunction of all records; an empty report passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, law: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.law == law)
    }

    /// Whether the named law is present and passed.
    pub fn law_passed(&self, law: &str) -> bool {
        self.check(law).is_some_and(|c| c.passed)
    }

    pub fn failed_laws(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.law.as_str())
            .collect()
    }

    pub fn record(&mut self, law: &str, anchor: &str, passed: bool) -> bool {
        self.checks.push(Check {
            law: law.to_string(),
            anchor: anchor.to_string(),
            passed,
            witness: None,
            note: None,
        });
        passed
    }

    pub fn record_note(&mut self, law: &str, anchor: &str, passed: bool, note: impl Into<String>) -> bool {
        self.record(law, anchor, passed);
        self.checks.last_mut().expect("just pushed").note = Some(note.into());
        passed
    }

    /// Records `lhs == rhs`; on failure the first differing basis vector is the witness.
    pub fn equal(&mut self, law: &str, anchor: &str, lhs: &Matrix, rhs: &Matrix) -> bool {
        if lhs.shape() != rhs.shape() {
            return self.record_note(
                law,
                anchor,
                false,
                format!("sides have shapes {:?} and {:?}", lhs.shape(), rhs.shape()),
            );
        }
        let witness = lhs.first_differing_column(rhs).map(|j| Witness {
            basis_index: j,
            lhs: lhs.column(j).iter().map(|s| s.to_string()).collect(),
            rhs: rhs.column(j).iter().map(|s| s.to_string()).collect(),
        });
        let passed = witness.is_none();
        self.checks.push(Check {
            law: law.to_string(),
            anchor: anchor.to_string(),
            passed,
            witness,
            note: None,
        });
        passed
    }

    /// Appends another report's records, prefixing their law ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.law = format!("{prefix}.{}", c.law);
            self.checks.push(c);
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.subject, verdict(self.passed()));
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}  ({})\n", verdict(c.passed), c.law, c.anchor));
            if let Some(w) = &c.witness {
                out.push_str(&format!(
                    "      basis vector {}: lhs = ({}), rhs = ({})\n",
                    w.basis_index,
                    w.lhs.join(", "),
                    w.rhs.join(", ")
                ));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("      {n}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = serde_json::Value::Bool(self.passed());
        v
    }
}

fn verdict(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}
