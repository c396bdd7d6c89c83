use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// User-entered values keyed by property path, before materialization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmissionPayload {
    #[serde(rename = "shapeId")]
    pub shape_id: String,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<String>>,
}

impl SubmissionPayload {
    pub fn new(shape_id: impl Into<String>) -> Self {
        SubmissionPayload {
            shape_id: shape_id.into(),
            values: BTreeMap::new(),
        }
    }

    /// Appends values at `path`.
    pub fn with<I, S>(mut self, path: &str, values: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.values
            .entry(path.to_string())
            .or_default()
            .extend(values.into_iter().map(Into::into));
        self
    }

    pub fn values_at(&self, path: &str) -> &[String] {
        self.values.get(path).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.values.values().all(Vec::is_empty)
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("payload serialization is infallible")
    }
}
