//! Report rendering: every subcommand builds one JSON value, and this
//! module serializes it as canonical JSON (the machine format), aligned
//! text, or flat CSV. All three renderings are deterministic functions of
//! the report value — maps iterate in sorted key order, and no timestamps
//! or other run-dependent fields are ever emitted.

use num::BigInt;

use clap::ValueEnum;
use permspec_core::ExactValue;
use serde_json::{json, Map, Value};

/// Output format selector shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Canonical machine format; exact rationals appear as
    /// `{"num": "...", "den": "..."}` decimal strings.
    Json,
    /// Human-oriented key/value lines and aligned tables.
    Text,
    /// Flat comma-separated key/value rows and sectioned tables.
    Csv,
}

// ---------------------------------------------------------------------------
// Exact rationals in JSON
// ---------------------------------------------------------------------------

/// Serializes an exact rational as decimal strings, never as a float:
/// `{"num": "-13", "den": "15"}`.
pub fn exact(value: &ExactValue) -> Value {
    json!({
        "num": value.numer().to_string(),
        "den": value.denom().to_string(),
    })
}

/// Serializes a slice of exact rationals in order.
pub fn exact_list(values: &[ExactValue]) -> Value {
    Value::Array(values.iter().map(exact).collect())
}

/// Reads a rational back from report JSON: either the `{"num", "den"}`
/// object this module writes or, as a convenience for hand-written files,
/// a plain JSON integer.
pub fn read_exact(value: &Value) -> Option<ExactValue> {
    if let Some(i) = value.as_i64() {
        return Some(ExactValue::from(BigInt::from(i)));
    }
    let map = value.as_object()?;
    let num: BigInt = map.get("num")?.as_str()?.parse().ok()?;
    let den: BigInt = map.get("den")?.as_str()?.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(ExactValue::new(num, den))
}

fn rational_inline(map: &Map<String, Value>) -> Option<String> {
    if map.len() != 2 {
        return None;
    }
    let num = map.get("num")?.as_str()?;
    let den = map.get("den")?.as_str()?;
    if den == "1" {
        Some(num.to_string())
    } else {
        Some(format!("{num}/{den}"))
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Renders a report in the requested format, trailing newline included.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report)
                .expect("report values contain no non-string keys");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            write_text(&mut out, report, 0);
            out
        }
        Format::Csv => render_csv(report),
    }
}

/// One-line rendering for scalars, rationals, and arrays of such; `None`
/// when the value needs a block of its own.
fn inline(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(x) => Some(x.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(map) => rational_inline(map),
        Value::Array(items) => {
            if items.is_empty() {
                return Some("-".to_string());
            }
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|item| match item {
                    Value::Array(_) => None,
                    Value::Object(map) => rational_inline(map),
                    other => inline(other),
                })
                .collect();
            Some(parts?.join(", "))
        }
    }
}

/// True when every element is an object with the same keys and only
/// inline-renderable values: the shape rendered as an aligned table.
fn table_shape(items: &[Value]) -> Option<Vec<&str>> {
    let first = items.first()?.as_object()?;
    if rational_inline(first).is_some() {
        return None;
    }
    let keys: Vec<&str> = first.keys().map(String::as_str).collect();
    for item in items {
        let map = item.as_object()?;
        if map.len() != keys.len() || !keys.iter().all(|k| map.contains_key(*k)) {
            return None;
        }
        if !map.values().all(|v| inline(v).is_some()) {
            return None;
        }
    }
    Some(keys)
}

fn write_table(out: &mut String, items: &[Value], keys: &[&str], indent: usize) {
    let mut rows: Vec<Vec<String>> = vec![keys.iter().map(|k| k.to_string()).collect()];
    for item in items {
        let map = item.as_object().expect("table_shape checked objects");
        rows.push(
            keys.iter()
                .map(|k| inline(&map[*k]).expect("table_shape checked inlines"))
                .collect(),
        );
    }
    let mut widths = vec![0usize; keys.len()];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let pad = "  ".repeat(indent);
    for row in &rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                let fill = widths[i].saturating_sub(cell.chars().count());
                line.extend(std::iter::repeat(' ').take(fill));
            }
        }
        out.push_str(&pad);
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn write_text(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, field) in map {
                if let Some(line) = inline(field) {
                    out.push_str(&format!("{pad}{key}: {line}\n"));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    write_text(out, field, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            if let Some(keys) = table_shape(items) {
                write_table(out, items, &keys, indent);
                return;
            }
            for item in items {
                if let Some(line) = inline(item) {
                    out.push_str(&format!("{pad}- {line}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(out, item, indent + 1);
                }
            }
        }
        other => {
            let line = inline(other).expect("scalars always render inline");
            out.push_str(&format!("{pad}{line}\n"));
        }
    }
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

fn csv_cell(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

/// Inline cell for CSV: scalar values verbatim, rationals as `p/q`,
/// arrays of scalars joined with `';'` so they stay in one cell.
fn csv_inline(value: &Value) -> Option<String> {
    match value {
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|item| match item {
                    Value::Array(_) | Value::Object(_) => {
                        item.as_object().and_then(rational_inline)
                    }
                    other => inline(other),
                })
                .collect();
            Some(parts?.join("; "))
        }
        other => inline(other),
    }
}

fn push_csv_rows(out: &mut String, prefix: &str, value: &Value) {
    match value {
        Value::Object(map) => {
            if let Some(line) = rational_inline(map) {
                out.push_str(&format!("{},{}\n", csv_cell(prefix), csv_cell(&line)));
                return;
            }
            for (key, field) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                push_csv_rows(out, &path, field);
            }
        }
        Value::Array(items) => {
            if let Some(keys) = table_shape(items) {
                out.push('\n');
                let header: Vec<String> = keys
                    .iter()
                    .map(|k| csv_cell(&format!("{prefix}.{k}")))
                    .collect();
                out.push_str(&header.join(","));
                out.push('\n');
                for item in items {
                    let map = item.as_object().expect("table_shape checked objects");
                    let row: Vec<String> = keys
                        .iter()
                        .map(|k| csv_cell(&csv_inline(&map[*k]).unwrap_or_default()))
                        .collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                return;
            }
            if let Some(line) = csv_inline(value) {
                out.push_str(&format!("{},{}\n", csv_cell(prefix), csv_cell(&line)));
                return;
            }
            for (index, item) in items.iter().enumerate() {
                push_csv_rows(out, &format!("{prefix}.{index}"), item);
            }
        }
        other => {
            let line = inline(other).expect("scalars always render inline");
            out.push_str(&format!("{},{}\n", csv_cell(prefix), csv_cell(&line)));
        }
    }
}

fn render_csv(report: &Value) -> String {
    let mut out = String::from("key,value\n");
    push_csv_rows(&mut out, "", report);
    out
}
