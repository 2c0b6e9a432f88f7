use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
  Pass,
  Fail,
  Skipped,
  Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
  pub name: String,
  pub status: Status,
  pub expected: Value,
  pub actual: Value,
}

impl Check {
  /// Passes when `expected == actual`.
  pub fn equal(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
    let (expected, actual) = (to_value(expected), to_value(actual));
    let status = if expected == actual { Status::Pass } else { Status::Fail };
    Self { name: name.into(), status, expected, actual }
  }

  pub fn holds(name: impl Into<String>, ok: bool, expected: impl Serialize, actual: impl Serialize) -> Self {
    let status = if ok { Status::Pass } else { Status::Fail };
    Self { name: name.into(), status, expected: to_value(expected), actual: to_value(actual) }
  }

  /// The check could neither be confirmed nor refuted.
  pub fn unknown(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
    Self { name: name.into(), status: Status::Unknown, expected: to_value(expected), actual: to_value(actual) }
  }

  pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
    Self { name: name.into(), status: Status::Skipped, expected: Value::Null, actual: Value::String(reason.into()) }
  }

  pub fn failed(name: impl Into<String>, reason: impl Into<String>) -> Self {
    Self { name: name.into(), status: Status::Fail, expected: Value::Null, actual: Value::String(reason.into()) }
  }
}

fn to_value(x: impl Serialize) -> Value { serde_json::to_value(x).expect("report values serialize") }

#[derive(Clone, Debug, Serialize)]
pub struct Report {
  pub scenario: String,
  pub params: BTreeMap<String, Value>,
  pub checks: Vec<Check>,
  pub elapsed_ms: u64,
}

impl Report {
  /// 0 when every check passes, 2 when something was skipped, 1 otherwise.
  pub fn exit_code(&self) -> i32 {
    if self.checks.iter().any(|c| matches!(c.status, Status::Fail | Status::Unknown)) {
      1
    } else if self.checks.iter().any(|c| c.status == Status::Skipped) {
      2
    } else {
      0
    }
  }

  pub fn to_csv(&self) -> String {
    let mut out = String::from("scenario,check,status,expected,actual\n");
    for c in &self.checks {
      out.push_str(&format!(
        "{},{},{},{},{}\n",
        self.scenario,
        csv_field(&c.name),
        serde_json::to_string(&c.status).unwrap().trim_matches('"'),
        csv_field(&plain(&c.expected)),
        csv_field(&plain(&c.actual))
      ));
    }
    out
  }
}

fn plain(v: &Value) -> String {
  match v {
    Value::String(s) => s.clone(),
    Value::Null => String::new(),
    other => other.to_string(),
  }
}

fn csv_field(s: &str) -> String {
  if s.contains([',', '"', '\n']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.to_string() }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn exit_codes() {
    let mut r = Report { scenario: "x".into(), params: BTreeMap::new(), checks: vec![Check::equal("a", 1, 1)], elapsed_ms: 0 };
    assert_eq!(r.exit_code(), 0);
    r.checks.push(Check::skipped("b", "guard"));
    assert_eq!(r.exit_code(), 2);
    r.checks.push(Check::equal("c", 1, 2));
    assert_eq!(r.exit_code(), 1);
  }

  #[test]
  fn csv_quotes_fields() {
    let r = Report {
      scenario: "s".into(),
      params: BTreeMap::new(),
      checks: vec![Check::equal("h", vec![1, 2], vec![1, 2])],
      elapsed_ms: 0,
    };
    assert_eq!(r.to_csv(), "scenario,check,status,expected,actual\ns,h,pass,\"[1,2]\",\"[1,2]\"\n");
  }
}
