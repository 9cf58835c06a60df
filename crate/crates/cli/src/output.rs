use std::fs;
use std::io::{self, Write};

use anyhow::{Context, Result};
use permpoly::Report;
use serde_json::Value;

use crate::{Common, Format};

pub fn write_report(common: &Common, report: Report) -> Result<()> {
    let report = if common.no_timing {
        report.without_timing()
    } else {
        report
    };
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    emit(common, &text)
}

/// Writes a single JSON object, or for CSV one header row and one value row
/// with nested keys joined by `.`.
pub fn write_value(common: &Common, value: &Value) -> Result<()> {
    let text = match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut cells = Vec::new();
            flatten("", value, &mut cells);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(cells.iter().map(|(k, _)| k))?;
            w.write_record(cells.iter().map(|(_, v)| v))?;
            String::from_utf8(w.into_inner()?)?
        }
    };
    emit(common, &text)
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_nests_with_dots() {
        let mut cells = Vec::new();
        flatten(
            "",
            &json!({"a": 1, "b": {"c": "x", "d": null}, "e": [1, 2]}),
            &mut cells,
        );
        let keys: Vec<_> = cells.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["a", "b.c", "b.d", "e"]);
        assert_eq!(cells[1].1, "x");
        assert_eq!(cells[2].1, "");
        assert_eq!(cells[3].1, "[1,2]");
    }
}
