//! JSON-lines and aligned text output.

use std::f64::consts::PI;
use std::io::{self, Write};

use serde_json::{Map, Number, Value};

use crate::Format;

const ANGLE_KEYS: [&str; 2] = ["theta", "phi"];

/// Rewrites every `theta`/`phi` field from radians to degrees.
fn to_degrees(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (key, field) in map.iter_mut() {
                match field {
                    Value::Number(n) if ANGLE_KEYS.contains(&key.as_str()) => {
                        let deg = n.as_f64().unwrap_or(f64::NAN) * 180.0 / PI;
                        *field = Number::from_f64(deg).map_or(Value::Null, Value::Number);
                    }
                    other => to_degrees(other),
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(to_degrees),
        _ => {}
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.16e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// Leaves are scalars and arrays that contain no objects.
fn flatten(prefix: &str, v: &Value, lines: &mut Vec<(String, String)>) {
    let nested = |items: &[Value]| items.iter().any(Value::is_object);
    match v {
        Value::Object(map) => flatten_object(prefix, map, lines),
        Value::Array(items) if nested(items) => {
            for (k, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), item, lines);
            }
        }
        _ => lines.push((prefix.to_string(), scalar(v))),
    }
}

fn flatten_object(prefix: &str, map: &Map<String, Value>, lines: &mut Vec<(String, String)>) {
    for (key, field) in map {
        let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
        flatten(&path, field, lines);
    }
}

pub fn emit(out: &mut impl Write, format: Format, index: Option<usize>, value: &Value, degrees: bool) -> io::Result<()> {
    let mut value = value.clone();
    if degrees {
        to_degrees(&mut value);
    }
    match format {
        Format::Json => writeln!(out, "{value}"),
        Format::Text => {
            if let Some(k) = index {
                writeln!(out, "# item {k}")?;
            }
            let mut lines = Vec::new();
            flatten("", &value, &mut lines);
            let width = lines.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (key, val) in lines {
                writeln!(out, "{key:<width$}  {val}")?;
            }
            Ok(())
        }
    }
}
