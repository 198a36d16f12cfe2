use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{DegreeCase, TargetDim};

/// A scalar in a report: a dimension, a flag or a rendered polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(i64::try_from(v).expect("fits in i64"))
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(i64::from(v))
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

/// One compared quantity in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    pub expected: Value,
    pub actual: Value,
}

impl DegreeRow {
    pub fn new(degree: u32, quantity: Option<&str>, expected: impl Into<Value>, actual: impl Into<Value>) -> Self {
        DegreeRow {
            degree,
            quantity: quantity.map(str::to_string),
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }
}

/// Outcome of a verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<DegreeCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<TargetDim>,
    pub params: BTreeMap<String, Value>,
    pub ok: bool,
    /// Named partial results, e.g. `series` and `imageDims`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub parts: BTreeMap<String, bool>,
    pub per_degree: Vec<DegreeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(check: &str, d: impl Into<Option<DegreeCase>>, n: Option<TargetDim>) -> Self {
        Report {
            check: check.to_string(),
            d: d.into(),
            n,
            params: BTreeMap::new(),
            ok: true,
            parts: BTreeMap::new(),
            per_degree: Vec::new(),
            witness: None,
            failures: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records a row; a mismatch fails the report and becomes the witness
    /// if none is set yet.
    pub fn push_row(&mut self, row: DegreeRow) {
        if !row.matches() {
            let what = row.quantity.as_deref().unwrap_or("value");
            self.fail(format!(
                "degree {}: {what} expected {}, got {}",
                row.degree, row.expected, row.actual
            ));
        }
        self.per_degree.push(row);
    }

    pub fn fail(&mut self, msg: String) {
        self.ok = false;
        if self.witness.is_none() {
            self.witness = Some(msg.clone());
        }
        self.failures.push(msg);
    }

    pub fn set_part(&mut self, name: &str, ok: bool) {
        self.parts.insert(name.to_string(), ok);
        if !ok {
            self.ok = false;
        }
    }

    pub fn part(&self, name: &str) -> Option<bool> {
        self.parts.get(name).copied()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.check)?;
        if let Some(d) = self.d {
            write!(f, " d={d}")?;
        }
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f, ": {}", if self.ok { "PASS" } else { "FAIL" })?;
        for (k, v) in &self.parts {
            writeln!(f, "  {k}: {}", if *v { "ok" } else { "FAILED" })?;
        }
        for row in &self.per_degree {
            let q = row.quantity.as_deref().map(|q| format!(" {q}")).unwrap_or_default();
            let mark = if row.matches() { "" } else { "  <-- mismatch" };
            writeln!(f, "  degree {}{q}: expected {} actual {}{mark}", row.degree, row.expected, row.actual)?;
        }
        for msg in &self.failures {
            writeln!(f, "  failure: {msg}")?;
        }
        Ok(())
    }
}
