//! Deterministic reports for the command line: an ordered verdict list,
//! sorted parameter and count maps, and JSON output that is byte-identical
//! across repeated runs and across thread counts.  Wall-clock timings are
//! recorded only on request, since they would break that identity.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

/// One named check with its outcome and, where useful, the expected and
/// actual values and a human-readable witness for failures.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A full command report.  Verdicts are sorted by check id on
/// finalization; parameters and counts use sorted maps throughout, so a
/// report serializes identically for identical inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub counts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            parameters: BTreeMap::new(),
            verdicts: Vec::new(),
            counts: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    pub fn count(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.counts.insert(key.into(), to_value(value));
        self
    }

    /// Record a bare pass/fail verdict.
    pub fn check(&mut self, check: &str, pass: bool) -> &mut Self {
        self.verdicts.push(Verdict {
            check: check.into(),
            pass,
            expected: None,
            actual: None,
            witness: None,
        });
        self
    }

    /// Record a verdict comparing an actual value against an expected one.
    pub fn check_eq<T: Serialize + PartialEq>(
        &mut self,
        check: &str,
        expected: T,
        actual: T,
    ) -> &mut Self {
        let pass = expected == actual;
        self.verdicts.push(Verdict {
            check: check.into(),
            pass,
            expected: Some(to_value(expected)),
            actual: Some(to_value(actual)),
            witness: None,
        });
        self
    }

    /// Record a failing-capable verdict with a witness message shown on
    /// failure.
    pub fn check_witness(&mut self, check: &str, pass: bool, witness: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            check: check.into(),
            pass,
            expected: None,
            actual: None,
            witness: if pass { None } else { Some(witness.into()) },
        });
        self
    }

    /// Sort the verdicts by check id; call once assembly is done.
    pub fn finalize(&mut self) -> &mut Self {
        self.verdicts.sort_by(|a, b| a.check.cmp(&b.check));
        self
    }

    /// True when every verdict passed (an empty list passes).
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Plain-text rendering: parameters, one line per verdict, counts.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report: {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "checks:");
            for v in &self.verdicts {
                let mark = if v.pass { "PASS" } else { "FAIL" };
                let mut line = format!("  [{mark}] {}", v.check);
                if let (Some(e), Some(a)) = (&v.expected, &v.actual) {
                    if v.pass {
                        let _ = write!(line, " = {a}");
                    } else {
                        let _ = write!(line, " expected {e}, got {a}");
                    }
                }
                if let Some(w) = &v.witness {
                    let _ = write!(line, " ({w})");
                }
                let _ = writeln!(out, "{line}");
            }
        }
        if !self.counts.is_empty() {
            let _ = writeln!(out, "counts:");
            for (k, v) in &self.counts {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms: {ms}");
        }
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "overall: {verdict}");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_serialize_deterministically_and_sort_verdicts() {
        let build = || {
            let mut r = Report::new("demo");
            r.param("q", 2).param("n", 6);
            r.check("b_second", true);
            r.check_eq("a_first", 63, 63);
            r.count("points", 63);
            r.finalize();
            r
        };
        let r1 = build();
        let r2 = build();
        assert_eq!(r1.to_json(), r2.to_json());
        assert_eq!(r1.verdicts[0].check, "a_first");
        assert!(r1.pass());
        assert!(r1.to_json().ends_with('\n'));
        assert!(!r1.to_json().contains("elapsed"));
    }

    #[test]
    fn failed_checks_carry_their_witnesses_into_the_table() {
        let mut r = Report::new("demo");
        r.check_eq("count", 5, 7);
        r.check_witness("closure", false, "element 3 escapes");
        r.finalize();
        assert!(!r.pass());
        let table = r.to_table();
        assert!(table.contains("expected 5, got 7"));
        assert!(table.contains("element 3 escapes"));
        assert!(table.contains("overall: FAIL"));
    }
}
