//! Verification reports: ordered check records with JSON, CSV and Markdown
//! renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    /// The identity or formula being checked, in words.
    pub anchor: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

/// Output renderings accepted by `--out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::Parse(format!("unknown output format {s:?}"))),
        }
    }
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            pass: true,
            wall_time_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// Records a check that passes iff `observed == expected`.
    pub fn expect_eq(
        &mut self,
        check: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
    ) -> bool {
        let expected = expected.into();
        let observed = observed.into();
        let pass = expected == observed;
        self.push(Check {
            check: check.into(),
            anchor: anchor.into(),
            expected,
            observed,
            pass,
        });
        pass
    }

    /// Records a check with an explicit verdict.
    pub fn record(
        &mut self,
        check: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
        pass: bool,
    ) -> bool {
        self.push(Check {
            check: check.into(),
            anchor: anchor.into(),
            expected: expected.into(),
            observed: observed.into(),
            pass,
        });
        pass
    }

    /// Records an operation error as a failed check.
    pub fn record_error(&mut self, check: impl Into<String>, anchor: impl Into<String>, err: &Error) {
        self.record(
            check,
            anchor,
            Value::String("ok".into()),
            Value::String(format!("{}: {err}", err.name())),
            false,
        );
    }

    /// Appends the checks of `sub`, prefixing their ids with its suite name.
    pub fn absorb(&mut self, sub: Report) {
        for mut c in sub.checks {
            c.check = format!("{}/{}", sub.suite, c.check);
            self.push(c);
        }
        self.pass &= sub.pass;
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Markdown => self.to_markdown(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "check", "anchor", "expected", "observed", "pass"])
            .expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                self.suite.as_str(),
                c.check.as_str(),
                c.anchor.as_str(),
                &compact(&c.expected),
                &compact(&c.observed),
                if c.pass { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "# {} ({verdict})\n", self.suite);
        if !self.parameters.is_empty() {
            for (k, v) in &self.parameters {
                let _ = writeln!(s, "- {k}: {}", compact(v));
            }
            s.push('\n');
        }
        s.push_str("| check | anchor | expected | observed | pass |\n");
        s.push_str("|---|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} |",
                md_cell(&c.check),
                md_cell(&c.anchor),
                md_cell(&compact(&c.expected)),
                md_cell(&compact(&c.observed)),
                if c.pass { "yes" } else { "no" }
            );
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}
