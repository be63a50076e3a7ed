//! Command output, rendered either as aligned text or as a JSON document.

use crate::matfile::{emit_matrix, format_real};
use coreep::{Matrix, Residuals};
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone)]
pub enum Item {
    Int(u64),
    Real(f64),
    Bool(bool),
    Text(String),
    Ints(Vec<usize>),
    Texts(Vec<String>),
    Matrix(Matrix),
    Residuals(Vec<ResidualRow>),
    Section(Report),
}

#[derive(Debug, Clone)]
pub struct ResidualRow {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passes: bool,
}

pub fn residual_rows(r: &Residuals) -> Vec<ResidualRow> {
    r.iter()
        .map(|(name, r)| ResidualRow {
            name: name.to_string(),
            value: r.value,
            bound: r.bound,
            passes: r.passes(),
        })
        .collect()
}

/// Ordered key/value list; keys double as JSON field names.
#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, Item)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, item: Item) -> &mut Self {
        self.entries.push((key.to_string(), item));
        self
    }

    pub fn int(&mut self, key: &str, v: usize) -> &mut Self {
        self.push(key, Item::Int(v as u64))
    }

    pub fn real(&mut self, key: &str, v: f64) -> &mut Self {
        self.push(key, Item::Real(v))
    }

    pub fn text(&mut self, key: &str, v: impl Into<String>) -> &mut Self {
        self.push(key, Item::Text(v.into()))
    }

    pub fn matrix(&mut self, key: &str, m: &Matrix) -> &mut Self {
        self.push(key, Item::Matrix(m.clone()))
    }

    pub fn residuals(&mut self, key: &str, r: &Residuals) -> &mut Self {
        self.push(key, Item::Residuals(residual_rows(r)))
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, item) in &self.entries {
            map.insert(k.clone(), item_json(item));
        }
        Value::Object(map)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, "");
        out
    }

    fn write_text(&self, out: &mut String, indent: &str) {
        let width = self
            .entries
            .iter()
            .filter(|(_, i)| is_inline(i))
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0);
        for (key, item) in &self.entries {
            match item {
                Item::Matrix(m) => {
                    out.push_str(&format!("{indent}{key} ({}x{}):\n", m.rows(), m.cols()));
                    for line in emit_matrix(m).lines() {
                        out.push_str(&format!("{indent}  {line}\n"));
                    }
                }
                Item::Residuals(rows) => {
                    out.push_str(&format!("{indent}{key}:\n"));
                    let w = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
                    for r in rows {
                        out.push_str(&format!(
                            "{indent}  {:<w$}  {:>10.3e}  <= {:>10.3e}  {}\n",
                            r.name,
                            r.value,
                            r.bound,
                            if r.passes { "ok" } else { "FAIL" },
                        ));
                    }
                }
                Item::Texts(lines) if !lines.is_empty() => {
                    out.push_str(&format!("{indent}{key}:\n"));
                    for l in lines {
                        out.push_str(&format!("{indent}  {l}\n"));
                    }
                }
                Item::Section(r) => {
                    out.push_str(&format!("{indent}{key}:\n"));
                    r.write_text(out, &format!("{indent}  "));
                }
                other => {
                    out.push_str(&format!("{indent}{key:<width$}  {}\n", inline_text(other)));
                }
            }
        }
    }
}

fn is_inline(item: &Item) -> bool {
    match item {
        Item::Matrix(_) | Item::Residuals(_) | Item::Section(_) => false,
        Item::Texts(v) => v.is_empty(),
        _ => true,
    }
}

fn inline_text(item: &Item) -> String {
    match item {
        Item::Int(v) => v.to_string(),
        Item::Real(v) => format_real(*v),
        Item::Bool(v) => v.to_string(),
        Item::Text(s) => s.clone(),
        Item::Ints(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        Item::Texts(_) => "(none)".into(),
        _ => unreachable!("block items are rendered separately"),
    }
}

/// Non-finite reals become `null`.
fn real_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn matrix_json(m: &Matrix) -> Value {
    let part = |f: fn(&coreep::C64) -> f64| -> Vec<Vec<Value>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| real_json(f(&m[(i, j)]))).collect())
            .collect()
    };
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "re": part(|z| z.re),
        "im": part(|z| z.im),
    })
}

fn item_json(item: &Item) -> Value {
    match item {
        Item::Int(v) => json!(v),
        Item::Real(v) => real_json(*v),
        Item::Bool(v) => json!(v),
        Item::Text(s) => json!(s),
        Item::Ints(v) => json!(v),
        Item::Texts(v) => json!(v),
        Item::Matrix(m) => matrix_json(m),
        Item::Residuals(rows) => {
            let mut map = Map::new();
            for r in rows {
                map.insert(
                    r.name.clone(),
                    json!({ "value": real_json(r.value), "bound": real_json(r.bound), "passes": r.passes }),
                );
            }
            Value::Object(map)
        }
        Item::Section(r) => r.to_json(),
    }
}

/// Top-level JSON document with schema version and command name.
pub fn document(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}
