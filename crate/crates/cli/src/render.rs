//! Text mode flattens the JSON report to one `path: value` line per leaf, so
//! both modes carry the same information.

use std::fmt::Write;

use serde_json::Value;

use crate::args::OutputFormat;
use crate::commands::Outcome;

pub fn render(out: &Outcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&out.value).expect("values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = out.table.clone().unwrap_or_default();
            if !s.is_empty() {
                s.push('\n');
            }
            flatten(&out.value, "", &mut s);
            s
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(child, &p, out);
            }
        }
        Value::Array(items) if !items.is_empty() && !items.iter().all(is_scalar) => {
            for (i, child) in items.iter().enumerate() {
                flatten(child, &format!("{path}[{i}]"), out);
            }
        }
        leaf => {
            let _ = writeln!(out, "{path}: {leaf}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let mut s = String::new();
        flatten(
            &json!({"a": 1, "b": {"c": [1, 2], "d": [{"e": "x"}]}, "f": []}),
            "",
            &mut s,
        );
        assert_eq!(s, "a: 1\nb.c: [1,2]\nb.d[0].e: \"x\"\nf: []\n");
    }
}
