use serde::{Deserialize, Serialize};

use crate::rdf::Term;
use crate::shacl::ComponentKind;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Violation,
    Warning,
}

/// Which validation phase produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Shacl,
    Custom,
}

/// One finding. JSON keys mirror the SHACL report vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationResult {
    #[serde(rename = "focusNode")]
    pub focus_node: Term,
    #[serde(rename = "resultPath", default, skip_serializing_if = "Option::is_none")]
    pub result_path: Option<String>,
    /// A constraint component name for the SHACL phase, a validator name
    /// for the custom phase.
    #[serde(rename = "sourceConstraintComponent")]
    pub component: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Term>,
    #[serde(rename = "resultMessage")]
    pub message: String,
    #[serde(rename = "resultSeverity")]
    pub severity: Severity,
    pub phase: Phase,
}

impl ValidationResult {
    pub fn shacl(
        component: ComponentKind,
        focus_node: &Term,
        path: Option<&str>,
        value: Option<Term>,
        message: String,
    ) -> Self {
        debug_assert!(!message.is_empty());
        ValidationResult {
            focus_node: focus_node.clone(),
            result_path: path.map(str::to_string),
            component: component.name().to_string(),
            value,
            message,
            severity: Severity::Violation,
            phase: Phase::Shacl,
        }
    }

    pub fn custom(
        validator: &str,
        focus_node: &Term,
        path: &str,
        value: Option<Term>,
        message: String,
        severity: Severity,
    ) -> Self {
        debug_assert!(!message.is_empty());
        ValidationResult {
            focus_node: focus_node.clone(),
            result_path: Some(path.to_string()),
            component: validator.to_string(),
            value,
            message,
            severity,
            phase: Phase::Custom,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.severity == Severity::Violation
    }
}

/// `conforms` holds exactly when no result is a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    conforms: bool,
    results: Vec<ValidationResult>,
}

impl Default for ValidationReport {
    fn default() -> Self {
        Self::from_results(Vec::new())
    }
}

impl ValidationReport {
    pub fn from_results(results: Vec<ValidationResult>) -> Self {
        ValidationReport {
            conforms: !results.iter().any(ValidationResult::is_violation),
            results,
        }
    }

    pub fn conforms(&self) -> bool {
        self.conforms
    }

    pub fn results(&self) -> &[ValidationResult] {
        &self.results
    }

    pub fn into_results(self) -> Vec<ValidationResult> {
        self.results
    }

    pub fn violations(&self) -> impl Iterator<Item = &ValidationResult> {
        self.results.iter().filter(|r| r.is_violation())
    }

    /// Appends `other`'s results, recomputing `conforms`.
    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.results.extend(other.results);
        Self::from_results(self.results)
    }

    /// Canonical JSON document: `{"reportVersion", "conforms", "results"}`.
    pub fn to_document(&self) -> String {
        serde_json::to_string(&ReportDocument {
            report_version: REPORT_VERSION.to_string(),
            conforms: self.conforms,
            results: self.results.clone(),
        })
        .expect("report serialization is infallible")
    }

    pub fn from_document(text: &str) -> Result<Self, serde_json::Error> {
        use serde::de::Error;
        let doc: ReportDocument = serde_json::from_str(text)?;
        if doc.report_version != REPORT_VERSION {
            return Err(serde_json::Error::custom(format!(
                "unsupported reportVersion {:?}",
                doc.report_version
            )));
        }
        let report = Self::from_results(doc.results);
        if report.conforms != doc.conforms {
            return Err(serde_json::Error::custom("conforms flag disagrees with results"));
        }
        Ok(report)
    }
}

#[derive(Serialize, Deserialize)]
struct ReportDocument {
    #[serde(rename = "reportVersion")]
    report_version: String,
    conforms: bool,
    results: Vec<ValidationResult>,
}
