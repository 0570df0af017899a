//! Lightweight JSONL schema validation.
//!
//! Each pipeline file format ships a schema (embedded at compile time)
//! listing its required top-level fields and their types. Command input
//! validation reports every offending line number instead of stopping at
//! the first.

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("line is not valid JSON: {0}")]
    NotJson(String),
    #[error("line is not a JSON object")]
    NotAnObject,
    #[error("missing required field `{0}`")]
    MissingField(String),
    #[error("field `{field}` should be {expected}")]
    WrongType { field: String, expected: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    String,
    Integer,
    Number,
    Bool,
    Array,
    Object,
}

impl FieldKind {
    fn matches(&self, value: &Value) -> bool {
        match self {
            FieldKind::String => value.is_string(),
            FieldKind::Integer => value.is_u64() || value.is_i64(),
            FieldKind::Number => value.is_number(),
            FieldKind::Bool => value.is_boolean(),
            FieldKind::Array => value.is_array(),
            FieldKind::Object => value.is_object(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            FieldKind::String => "a string",
            FieldKind::Integer => "an integer",
            FieldKind::Number => "a number",
            FieldKind::Bool => "a boolean",
            FieldKind::Array => "an array",
            FieldKind::Object => "an object",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Schema {
    pub name: &'static str,
    fields: &'static [(&'static str, FieldKind)],
}

impl Schema {
    pub fn validate_value(&self, value: &Value) -> Result<(), SchemaError> {
        let obj = value.as_object().ok_or(SchemaError::NotAnObject)?;
        for (field, kind) in self.fields {
            match obj.get(*field) {
                None => return Err(SchemaError::MissingField(field.to_string())),
                Some(v) if !kind.matches(v) => {
                    return Err(SchemaError::WrongType { field: field.to_string(), expected: kind.name() });
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn validate_line(&self, line: &str) -> Result<Value, SchemaError> {
        let value: Value =
            serde_json::from_str(line).map_err(|e| SchemaError::NotJson(e.to_string()))?;
        self.validate_value(&value)?;
        Ok(value)
    }

    /// Validates every non-empty line; returns `(line_number, error)` pairs
    /// (1-based).
    pub fn violations(&self, content: &str) -> Vec<(usize, SchemaError)> {
        content
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .filter_map(|(i, line)| self.validate_line(line).err().map(|e| (i + 1, e)))
            .collect()
    }
}

pub fn dataset_schema() -> Schema {
    Schema {
        name: "dataset",
        fields: &[
            ("id", FieldKind::String),
            ("kind", FieldKind::String),
            ("context_sentences", FieldKind::Array),
            ("final_sentence", FieldKind::String),
            ("expression", FieldKind::String),
            ("expression_char_span", FieldKind::Array),
            ("gloss", FieldKind::String),
            ("continuations", FieldKind::Array),
            ("split", FieldKind::String),
        ],
    }
}

pub fn bundles_schema() -> Schema {
    Schema {
        name: "bundles",
        fields: &[
            ("instance_id", FieldKind::String),
            ("source", FieldKind::String),
            ("padded", FieldKind::Bool),
            ("inferences", FieldKind::Array),
        ],
    }
}

pub fn predictions_schema() -> Schema {
    Schema {
        name: "predictions",
        fields: &[
            ("instance_id", FieldKind::String),
            ("scores", FieldKind::Array),
            ("chosen", FieldKind::Integer),
            ("gold", FieldKind::Integer),
        ],
    }
}

pub fn generations_schema() -> Schema {
    Schema {
        name: "generations",
        fields: &[
            ("instance_id", FieldKind::String),
            ("model", FieldKind::String),
            ("continuation_text", FieldKind::String),
            ("tokens", FieldKind::Array),
            ("seed", FieldKind::Integer),
        ],
    }
}

pub fn errors_schema() -> Schema {
    Schema {
        name: "errors",
        fields: &[
            ("instance_id", FieldKind::String),
            ("source", FieldKind::String),
            ("error", FieldKind::String),
        ],
    }
}
