//! Human-readable rendering of a JSON report.

use std::fmt::Write;

use chrono::{DateTime, TimeZone};
use serde_json::Value;

pub fn text<Tz: TimeZone>(report: &Value, now: DateTime<Tz>) -> String
where
    Tz::Offset: std::fmt::Display,
{
    let mut out = String::new();
    let command = report["command"].as_str().unwrap_or("?");
    writeln!(
        out,
        "polyint {command} report (schema {}), generated {}",
        report["schema_version"].as_str().unwrap_or("?"),
        now.format("%Y-%m-%d %H:%M:%S %Z")
    )
    .unwrap();
    for p in report["problems"].as_array().into_iter().flatten() {
        writeln!(out).unwrap();
        let name = p["name"].as_str().unwrap_or("");
        writeln!(
            out,
            "== {} [{}] {}",
            name,
            p["status"].as_str().unwrap_or("?"),
            p["file"].as_str().unwrap_or("")
        )
        .unwrap();
        if let Some(err) = p["error"].as_str() {
            writeln!(out, "  error: {err}").unwrap();
        }
        if let Value::Object(results) = &p["results"] {
            for (key, body) in results {
                writeln!(out, "  {key}:").unwrap();
                walk(&mut out, body, 2);
            }
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(format!(
            "[{}]",
            items
                .iter()
                .map(|i| scalar(i).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn walk(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        walk(out, item, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        walk(out, item, depth + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}
