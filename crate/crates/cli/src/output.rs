use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::Format;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Mismatch,
    BudgetExhausted,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::BudgetExhausted => 3,
        }
    }

    fn worst(self, other: Status) -> Status {
        match (self, other) {
            (Status::Mismatch, _) | (_, Status::Mismatch) => Status::Mismatch,
            (Status::BudgetExhausted, _) | (_, Status::BudgetExhausted) => Status::BudgetExhausted,
            _ => Status::Ok,
        }
    }
}

/// A comparison against a known answer. `ok` is `None` when the actual
/// value could not be computed within the budget.
#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    pub check: String,
    pub expected: Value,
    pub actual: Value,
    pub ok: Option<bool>,
}

impl Expectation {
    pub fn new(check: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let ok = if actual.is_null() { None } else { Some(expected == actual) };
        Expectation {
            check: check.into(),
            expected,
            actual,
            ok,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Run {
    pub entry: String,
    pub kind: Option<String>,
    pub report: Value,
    pub expectations: Vec<Expectation>,
    pub budget_exhausted: bool,
    pub elapsed_ms: Option<u128>,
}

impl Run {
    pub fn status(&self) -> Status {
        if self.expectations.iter().any(|e| e.ok == Some(false)) {
            Status::Mismatch
        } else if self.budget_exhausted || self.expectations.iter().any(|e| e.ok.is_none()) {
            Status::BudgetExhausted
        } else {
            Status::Ok
        }
    }

    fn to_json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("entry".into(), json!(self.entry));
        if let Some(k) = &self.kind {
            m.insert("kind".into(), json!(k));
        }
        m.insert("status".into(), json!(self.status()));
        m.insert("report".into(), self.report.clone());
        m.insert("expectations".into(), json!(self.expectations));
        if let Some(ms) = self.elapsed_ms {
            m.insert("elapsed_ms".into(), json!(ms));
        }
        m
    }
}

#[derive(Clone, Debug)]
pub enum Body {
    Single(Run),
    Batch(Vec<Run>),
    Raw(Value),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub command: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub body: Body,
}

impl Document {
    pub fn status(&self) -> Status {
        match &self.body {
            Body::Single(r) => r.status(),
            Body::Batch(runs) => runs.iter().fold(Status::Ok, |s, r| s.worst(r.status())),
            Body::Raw(_) => Status::Ok,
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.status().code()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(format!("lfd.{}/1", self.command)));
        m.insert("tool_version".into(), json!(TOOL_VERSION));
        match &self.body {
            Body::Raw(v) => {
                m.insert("entries".into(), v.clone());
            }
            Body::Single(r) => {
                m.insert("seed".into(), json!(self.seed));
                m.insert("trials".into(), json!(self.trials));
                m.extend(r.to_json());
            }
            Body::Batch(runs) => {
                m.insert("seed".into(), json!(self.seed));
                m.insert("trials".into(), json!(self.trials));
                m.insert("status".into(), json!(self.status()));
                let count = |s: Status| runs.iter().filter(|r| r.status() == s).count();
                m.insert(
                    "summary".into(),
                    json!({
                        "total": runs.len(),
                        "ok": count(Status::Ok),
                        "mismatch": count(Status::Mismatch),
                        "budget_exhausted": count(Status::BudgetExhausted),
                    }),
                );
                m.insert(
                    "entries".into(),
                    Value::Array(runs.iter().map(|r| Value::Object(r.to_json())).collect()),
                );
            }
        }
        Value::Object(m)
    }
}

pub fn print(doc: &Document, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&doc.to_json()).expect("serializable") + "\n",
        Format::Table => table(doc),
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.strip_suffix("/1").filter(|n| n.parse::<i64>().is_ok()).unwrap_or(s).to_string(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Flattens a report into `path value` pairs, skipping bulky subtrees.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    const SKIP: [&str; 3] = ["discriminant", "field", "fields"];
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                if SKIP.contains(&k.as_str()) {
                    continue;
                }
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&path, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn ok_text(ok: Option<bool>) -> String {
    match ok {
        Some(true) => "ok".into(),
        Some(false) => "MISMATCH".into(),
        None => "undecided".into(),
    }
}

fn run_table(r: &Run) -> String {
    let mut s = format!("entry: {}  status: {}\n", r.entry, scalar(&json!(r.status())));
    let mut pairs = Vec::new();
    flatten("", &r.report, &mut pairs);
    let rows: Vec<Vec<String>> = pairs.into_iter().map(|(k, v)| vec![format!("  {k}"), v]).collect();
    s.push_str(&aligned(&rows));
    if !r.expectations.is_empty() {
        let mut rows = vec![vec!["  check".to_string(), "expected".into(), "actual".into(), "result".into()]];
        rows.extend(r.expectations.iter().map(|e| {
            vec![format!("  {}", e.check), scalar(&e.expected), scalar(&e.actual), ok_text(e.ok)]
        }));
        s.push_str(&aligned(&rows));
    }
    s
}

pub fn table(doc: &Document) -> String {
    match &doc.body {
        Body::Single(r) => run_table(r),
        Body::Batch(runs) => {
            let mut rows = vec![vec!["entry".to_string(), "kind".into(), "checks".into(), "status".into()]];
            for r in runs {
                let passed = r.expectations.iter().filter(|e| e.ok == Some(true)).count();
                rows.push(vec![
                    r.entry.clone(),
                    r.kind.clone().unwrap_or_default(),
                    format!("{passed}/{}", r.expectations.len()),
                    scalar(&json!(r.status())),
                ]);
            }
            let mut s = aligned(&rows);
            for r in runs.iter().filter(|r| r.status() != Status::Ok) {
                s.push('\n');
                s.push_str(&run_table(r));
            }
            s
        }
        Body::Raw(v) => {
            let rows: Vec<Vec<String>> = v
                .as_array()
                .into_iter()
                .flatten()
                .map(|e| vec![scalar(&e["id"]), scalar(&e["kind"]), scalar(&e["description"])])
                .collect();
            aligned(&rows)
        }
    }
}
