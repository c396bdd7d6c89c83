use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::custom::Condition;

pub const SCHEMA_VERSION: &str = "1";

/// Abstract form compiled from one node shape. This is the JSON document
/// served at `GET /api/forms/{shapeId}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FormSchema {
    pub schema_version: String,
    pub shape_id: String,
    pub target_class: String,
    pub fields: Vec<FormField>,
}

impl FormSchema {
    pub fn field(&self, path: &str) -> Option<&FormField> {
        self.fields.iter().find(|f| f.path == path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FormField {
    pub path: String,
    pub label: String,
    pub widget: Widget,
    pub required: bool,
    pub min_occurs: u64,
    pub max_occurs: MaxOccurs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Vec<FieldOption>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datatype: Option<String>,
    /// Whether entered values become IRIs or literals.
    pub value_kind: ValueKind,
    pub live_checks: Vec<LiveCheck>,
    pub async_validators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visible_when: Option<Condition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Widget {
    Select,
    Text,
    Url,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Iri,
    Literal,
}

/// An allowed value. `datatype` is present only for literal options.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldOption {
    pub value: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datatype: Option<String>,
}

/// Checks a client can run while the user types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "argument", rename_all = "camelCase")]
pub enum LiveCheck {
    Pattern {
        source: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        flags: Option<String>,
    },
    Datatype(String),
    InList(Vec<String>),
    /// A syntactic validator, run via `POST /api/validate`.
    Validator(String),
}

/// Upper bound on occurrences: a number, or `"unbounded"` in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxOccurs {
    Bounded(u64),
    Unbounded,
}

impl MaxOccurs {
    pub fn allows(self, n: u64) -> bool {
        match self {
            MaxOccurs::Bounded(max) => n <= max,
            MaxOccurs::Unbounded => true,
        }
    }
}

impl Serialize for MaxOccurs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxOccurs::Bounded(n) => s.serialize_u64(*n),
            MaxOccurs::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for MaxOccurs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = MaxOccurs;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"unbounded\"")
            }

            fn visit_u64<E: de::Error>(self, n: u64) -> Result<MaxOccurs, E> {
                Ok(MaxOccurs::Bounded(n))
            }

            fn visit_i64<E: de::Error>(self, n: i64) -> Result<MaxOccurs, E> {
                u64::try_from(n)
                    .map(MaxOccurs::Bounded)
                    .map_err(|_| E::custom("maxOccurs must be non-negative"))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<MaxOccurs, E> {
                if s == "unbounded" {
                    Ok(MaxOccurs::Unbounded)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(s), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SchemaParseError {
    #[error("invalid form schema document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schemaVersion {0:?}")]
    Version(String),
}

/// Compact JSON with keys in declaration order; byte-identical across runs.
pub fn serialize_form_schema(schema: &FormSchema) -> String {
    serde_json::to_string(schema).expect("form schema serialization is infallible")
}

pub fn parse_form_schema(text: &str) -> Result<FormSchema, SchemaParseError> {
    #[derive(Deserialize)]
    struct Probe {
        #[serde(rename = "schemaVersion")]
        schema_version: String,
    }
    let probe: Probe = serde_json::from_str(text)?;
    if probe.schema_version != SCHEMA_VERSION {
        return Err(SchemaParseError::Version(probe.schema_version));
    }
    Ok(serde_json::from_str(text)?)
}
