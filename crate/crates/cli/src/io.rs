//! JSONL reading/writing with schema validation.

use std::path::Path;

use anyhow::{Context, Result, bail};
use serde::Serialize;
use serde::de::DeserializeOwned;

use figbench::schema::Schema;

/// Reads a JSONL file, validating every line against `schema` first.
/// Schema violations are reported with their line numbers and fail the
/// command.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path, schema: &Schema) -> Result<Vec<T>> {
    let content = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let violations = schema.violations(&content);
    if !violations.is_empty() {
        let mut message = format!(
            "{} does not match the {} schema:",
            path.display(),
            schema.name
        );
        for (line, err) in &violations {
            message.push_str(&format!("\n  line {line}: {err}"));
        }
        bail!(message);
    }
    content
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line)
                .with_context(|| format!("{} line {}", path.display(), i + 1))
        })
        .collect()
}

/// Writes one JSON object per line. Field order follows the struct
/// definition, so output is byte-stable.
pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = serde_json::to_string_pretty(value)?;
    out.push('\n');
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}
