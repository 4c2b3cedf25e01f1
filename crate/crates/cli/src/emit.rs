//! Canonical serialization of reports.
//!
//! JSON output has sorted keys, two-space indentation and every float
//! written with 17 significant digits in exponent form, so that equal
//! values always produce equal bytes and parsing then re-emitting is the
//! identity.

use serde_json::{Number, Value};

use crate::error::{CliError, Result};

/// Exactly 17 significant digits, round-trip safe for `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_number(n: &Number) -> String {
    if let Some(u) = n.as_u64() {
        u.to_string()
    } else if let Some(i) = n.as_i64() {
        i.to_string()
    } else {
        format_float(n.as_f64().expect("finite JSON number"))
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, k: usize| out.extend(std::iter::repeat_n("  ", k));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&format_number(n)),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            // rows of plain numbers stay on one line
            if items.iter().all(|x| x.is_number()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, x, indent);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*k], indent + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Canonical JSON text, newline-terminated.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

/// A flat numeric table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    /// `field,value` rows for every scalar leaf, keyed by dotted path.
    pub fn flatten(v: &Value) -> Table {
        fn walk(prefix: &str, v: &Value, rows: &mut Vec<Vec<Value>>) {
            let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
            match v {
                Value::Object(map) => {
                    let mut keys: Vec<&String> = map.keys().collect();
                    keys.sort();
                    for k in keys {
                        walk(&join(k), &map[k], rows);
                    }
                }
                Value::Array(items) => {
                    for (i, x) in items.iter().enumerate() {
                        walk(&join(&i.to_string()), x, rows);
                    }
                }
                leaf => rows.push(vec![Value::String(prefix.to_string()), leaf.clone()]),
            }
        }
        let mut rows = Vec::new();
        walk("", v, &mut rows);
        Table { header: vec!["field".into(), "value".into()], rows }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => format_number(n),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn csv_bytes(table: &Table) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io { path: "<csv>".into(), source: std::io::Error::other(e) };
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell)).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io { path: "<csv>".into(), source: e.into_error() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(4.0), "4.0000000000000000e0");
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.5e-300), "-2.5000000000000000e-300");
    }

    #[test]
    fn keys_are_sorted_and_roundtrip() {
        let v = json!({"b": [1.5, 2], "a": {"z": null, "y": "s\"q"}, "c": []});
        let text = canonical_json(&v);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&back), text);
    }

    #[test]
    fn flattened_table() {
        let t = Table::flatten(&json!({"x": {"b": 1, "a": [true, 0.5]}}));
        assert_eq!(t.rows[0][0], json!("x.a.0"));
        let csv = String::from_utf8(csv_bytes(&t).unwrap()).unwrap();
        assert_eq!(csv, "field,value\nx.a.0,true\nx.a.1,5.0000000000000000e-1\nx.b,1\n");
    }
}
