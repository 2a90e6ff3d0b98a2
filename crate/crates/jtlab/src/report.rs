//! JSON report documents and the schema they are promised to satisfy.
//!
//! The schema ships with the binary (embedded at compile time and written
//! next to this module's source) so downstream consumers can pin their
//! parsers to it. [`validate_against_schema`] implements the small slice of
//! JSON Schema the file actually uses — types, properties, required,
//! additionalProperties, items, enum, minimum, minItems/maxItems — which
//! keeps validation dependency-free and lets the test suite check every
//! emitted document.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::poset::PosetVertex;

pub const SCHEMA_VERSION: u64 = 1;
pub const SCHEMA_JSON: &str = include_str!("../schema/report.schema.json");

/// One report on standard output. Sections are present exactly when the
/// invoked command produces them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u64,
    pub command: String,
    pub partition: Vec<usize>,
    pub metadata: ReportMetadata,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub version: String,
    pub prime: u64,
    pub rng: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ReportMetadata {
    pub fn new() -> Self {
        ReportMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            prime: crate::field::MODULUS,
            rng: crate::field::RNG_NAME.to_string(),
            trials: None,
            seed: None,
        }
    }
}

impl Default for ReportMetadata {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_u: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_u_witnesses: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oblak: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_mc: Option<Vec<usize>>,
    /// `Some(None)` means the closed form was requested but does not exist
    /// for the partition; it serializes as an explicit `null`.
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        deserialize_with = "present_but_maybe_null"
    )]
    pub q_closed: Option<Option<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spreads: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check_idempotent: Option<IdempotenceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotenceReport {
    pub q_of_q: Vec<usize>,
    pub fixed_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetReport {
    pub vertex_count: usize,
    pub vertices: Vec<[usize; 3]>,
    pub covers: Vec<CoverEdgeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdgeReport {
    pub source: usize,
    pub target: usize,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub count: usize,
    pub size: usize,
    pub antichains: Vec<Vec<[usize; 3]>>,
    pub certified: bool,
}

impl ReportDocument {
    pub fn new(command: &str, partition: Vec<usize>) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            partition,
            metadata: ReportMetadata::new(),
            invariants: None,
            poset: None,
            cover: None,
        }
    }

    /// Pretty JSON plus a trailing newline; field order is fixed by the
    /// struct definitions, so identical reports are byte-identical.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

pub fn vertex_triple(v: PosetVertex) -> [usize; 3] {
    [v.u, v.p, v.k]
}

/// Keeps a present-but-`null` key distinct from an absent key when reading a
/// document back: the default `Option<Option<_>>` impl folds both to `None`.
fn present_but_maybe_null<'de, D>(de: D) -> Result<Option<Option<Vec<usize>>>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Option::<Vec<usize>>::deserialize(de).map(Some)
}

/// Validates a document against the embedded schema.
pub fn validate_against_schema(doc: &Value) -> Result<(), String> {
    let schema: Value = serde_json::from_str(SCHEMA_JSON).expect("embedded schema parses");
    validate_value(&schema, doc, "$")
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn validate_value(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(allowed) = schema.get("enum") {
        let allowed = allowed.as_array().expect("enum lists values");
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} is not one of {allowed:?}"));
        }
    }
    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(|v| v.as_str()).collect(),
            _ => vec![],
        };
        if !names.iter().any(|name| type_matches(name, value)) {
            return Err(format!("{path}: expected type {names:?}"));
        }
    }
    if let Some(min) = schema.get("minimum") {
        if let (Some(v), Some(m)) = (as_integer(value), as_integer(min)) {
            if v < m {
                return Err(format!("{path}: {v} is below the minimum {m}"));
            }
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required property {key:?}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in obj.keys() {
                if props.is_none_or(|p| !p.contains_key(key)) {
                    return Err(format!("{path}: unexpected property {key:?}"));
                }
            }
        }
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate_value(sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let Some(list) = value.as_array() {
        if let Some(min_items) = schema.get("minItems").and_then(Value::as_u64) {
            if (list.len() as u64) < min_items {
                return Err(format!("{path}: fewer than {min_items} items"));
            }
        }
        if let Some(max_items) = schema.get("maxItems").and_then(Value::as_u64) {
            if (list.len() as u64) > max_items {
                return Err(format!("{path}: more than {max_items} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            if items.is_object() {
                for (i, v) in list.iter().enumerate() {
                    validate_value(items, v, &format!("{path}[{i}]"))?;
                }
            }
        }
    }
    Ok(())
}

fn as_integer(v: &Value) -> Option<i128> {
    v.as_i64()
        .map(i128::from)
        .or_else(|| v.as_u64().map(i128::from))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample_doc() -> ReportDocument {
        let mut doc = ReportDocument::new("invariants", vec![3, 1]);
        doc.metadata.trials = Some(3);
        doc.metadata.seed = Some(0);
        doc.invariants = Some(InvariantsReport {
            mu: Some(1),
            r: Some(2),
            lambda: Some(vec![3, 1]),
            q_closed: Some(None),
            ..InvariantsReport::default()
        });
        doc
    }

    #[test]
    fn documents_round_trip() {
        let doc = sample_doc();
        let text = doc.to_json_string();
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn sample_document_validates() {
        let value: Value = serde_json::from_str(&sample_doc().to_json_string()).unwrap();
        validate_against_schema(&value).unwrap();
    }

    #[test]
    fn requested_but_absent_closed_form_is_null() {
        let text = sample_doc().to_json_string();
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["invariants"]["q_closed"], Value::Null);
    }

    #[test]
    fn validator_rejects_bad_documents() {
        let good: Value = serde_json::from_str(&sample_doc().to_json_string()).unwrap();

        let mut bad = good.clone();
        bad["schema_version"] = json!(2);
        assert!(validate_against_schema(&bad).is_err());

        let mut bad = good.clone();
        bad["command"] = json!("mystery");
        assert!(validate_against_schema(&bad).is_err());

        let mut bad = good.clone();
        bad["partition"] = json!([3, 0]);
        assert!(validate_against_schema(&bad).is_err());

        let mut bad = good.clone();
        bad.as_object_mut().unwrap().remove("metadata");
        assert!(validate_against_schema(&bad).is_err());

        let mut bad = good.clone();
        bad["extra"] = json!(true);
        assert!(validate_against_schema(&bad).is_err());

        let mut bad = good;
        bad["invariants"]["lambda"] = json!([]);
        assert!(validate_against_schema(&bad).is_err());
    }

    #[test]
    fn poset_and_cover_sections_validate() {
        let mut doc = ReportDocument::new("poset", vec![2, 1]);
        doc.poset = Some(PosetReport {
            vertex_count: 3,
            vertices: vec![[1, 1, 1], [1, 2, 1], [2, 2, 1]],
            covers: vec![CoverEdgeReport {
                source: 1,
                target: 0,
                kind: "beta".to_string(),
            }],
        });
        let value: Value = serde_json::from_str(&doc.to_json_string()).unwrap();
        validate_against_schema(&value).unwrap();

        let mut doc = ReportDocument::new("cover", vec![1]);
        doc.cover = Some(CoverReport {
            count: 1,
            size: 1,
            antichains: vec![vec![[1, 1, 1]]],
            certified: true,
        });
        let value: Value = serde_json::from_str(&doc.to_json_string()).unwrap();
        validate_against_schema(&value).unwrap();

        // a malformed vertex triple is caught
        let mut bad: Value = serde_json::from_str(&doc.to_json_string()).unwrap();
        bad["cover"]["antichains"][0][0] = json!([1, 1]);
        assert!(validate_against_schema(&bad).is_err());
    }
}
