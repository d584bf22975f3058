//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version of the JSON report layout, bumped on incompatible changes.
pub const SCHEMA_VERSION: &str = "1";

/// One checked statement: what was expected, what was computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub description: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Claim {
    /// A claim that passes exactly when the two values agree.
    pub fn equal<T: Serialize + PartialEq>(description: impl Into<String>, expected: T, computed: T) -> Claim {
        let pass = expected == computed;
        Claim {
            description: description.into(),
            expected: to_value(&expected),
            computed: to_value(&computed),
            pass,
        }
    }

    /// A claim about a property; `detail` is reported as the computed value.
    pub fn holds(description: impl Into<String>, pass: bool, detail: impl Into<String>) -> Claim {
        Claim {
            description: description.into(),
            expected: Value::Bool(true),
            computed: if pass { Value::Bool(true) } else { Value::String(detail.into()) },
            pass,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("claim values serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub params: Value,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    pub fn new(scenario: impl Into<String>, params: Value) -> Report {
        Report { scenario: scenario.into(), params, claims: Vec::new(), note: None }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn extend(&mut self, claims: impl IntoIterator<Item = Claim>) {
        self.claims.extend(claims);
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Report {
        self.note = Some(note.into());
        self
    }

    pub fn add_note(&mut self, note: impl Into<String>) {
        let note = note.into();
        self.note = Some(match self.note.take() {
            None => note,
            Some(old) => format!("{old} {note}"),
        });
    }

    /// True when there is at least one claim and every claim passes.
    pub fn passed(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    /// Human-readable rendering with the same numbers as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {}  params {}\n", self.scenario, self.params);
        for c in &self.claims {
            out.push_str(&format!(
                "  [{}] {}\n      expected {}\n      computed {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.description,
                c.expected,
                c.computed
            ));
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("  note: {n}\n"));
        }
        out.push_str(&format!("  result: {}\n", if self.passed() { "pass" } else { "FAIL" }));
        out
    }

    /// One CSV row per claim: scenario,description,expected,computed,pass.
    pub fn to_csv_rows(&self) -> Vec<String> {
        self.claims
            .iter()
            .map(|c| {
                [
                    csv_field(&self.scenario),
                    csv_field(&c.description),
                    csv_field(&c.expected.to_string()),
                    csv_field(&c.computed.to_string()),
                    c.pass.to_string(),
                ]
                .join(",")
            })
            .collect()
    }
}

pub const CSV_HEADER: &str = "scenario,description,expected,computed,pass";

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_does_not_pass() {
        let mut r = Report::new("x", Value::Null);
        assert!(!r.passed());
        r.push(Claim::equal("same", vec![1, 2], vec![1, 2]));
        assert!(r.passed());
        r.push(Claim::holds("bad", false, "broken"));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn csv_quotes_fields() {
        let mut r = Report::new("s", Value::Null);
        r.push(Claim::equal("dims", vec![1, 0], vec![1, 0]));
        assert_eq!(r.to_csv_rows(), vec!["s,dims,\"[1,0]\",\"[1,0]\",true".to_string()]);
    }
}
