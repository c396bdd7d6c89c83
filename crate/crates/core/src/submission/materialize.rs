use std::fmt;

use thiserror::Error;

use super::SubmissionPayload;
use crate::form::{FormField, FormSchema, ValueKind};
use crate::rdf::{validate_lexical, Graph, LexicalCheck, Term, Triple};
use crate::shacl::ComponentKind;
use crate::validate::{ValidationReport, ValidationResult};
use crate::vocab::xsd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldIssue {
    EmptyPayload,
    UnknownField { path: String },
    EmptyValues { path: String },
    InvalidLexical { path: String, value: String, datatype: String },
    NotAnIri { path: String, value: String },
}

impl FieldIssue {
    /// Constraint component the issue is reported under.
    pub fn component(&self) -> ComponentKind {
        match self {
            FieldIssue::EmptyPayload | FieldIssue::EmptyValues { .. } => ComponentKind::MinCount,
            FieldIssue::UnknownField { .. } => ComponentKind::MaxCount,
            FieldIssue::InvalidLexical { .. } => ComponentKind::Datatype,
            FieldIssue::NotAnIri { .. } => ComponentKind::NodeKind,
        }
    }

    pub fn path(&self) -> Option<&str> {
        match self {
            FieldIssue::EmptyPayload => None,
            FieldIssue::UnknownField { path }
            | FieldIssue::EmptyValues { path }
            | FieldIssue::InvalidLexical { path, .. }
            | FieldIssue::NotAnIri { path, .. } => Some(path),
        }
    }

    fn value(&self) -> Option<Term> {
        match self {
            FieldIssue::InvalidLexical { value, .. } | FieldIssue::NotAnIri { value, .. } => {
                Some(Term::literal(value.as_str()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for FieldIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldIssue::EmptyPayload => f.write_str("the payload has no values"),
            FieldIssue::UnknownField { path } => write!(f, "<{path}> is not a field of this form"),
            FieldIssue::EmptyValues { path } => write!(f, "<{path}> is present with an empty value list"),
            FieldIssue::InvalidLexical { path, value, datatype } => {
                write!(f, "<{path}>: {value:?} is not a valid <{datatype}>")
            }
            FieldIssue::NotAnIri { path, value } => write!(f, "<{path}>: {value:?} is not an absolute IRI"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot materialize payload: {}", .issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct MaterializeError {
    pub issues: Vec<FieldIssue>,
}

impl MaterializeError {
    /// Report with one SHACL-phase violation per issue.
    pub fn to_report(&self, subject: &Term) -> ValidationReport {
        ValidationReport::from_results(
            self.issues
                .iter()
                .map(|i| ValidationResult::shacl(i.component(), subject, i.path(), i.value(), i.to_string()))
                .collect(),
        )
    }
}

/// One triple `(subject, path, term)` per payload value.
///
/// Select values that match an option take the option's term. Other values
/// become IRIs for IRI-valued fields, otherwise literals of the field's
/// datatype (`xsd:string` when none). All issues are collected.
pub fn materialize(payload: &SubmissionPayload, schema: &FormSchema, subject: &str) -> Result<Graph, MaterializeError> {
    let mut issues = Vec::new();
    if payload.values.is_empty() {
        issues.push(FieldIssue::EmptyPayload);
    }
    let subject = Term::iri(subject);
    let mut graph = Graph::new();
    for (path, values) in &payload.values {
        let Some(field) = schema.field(path) else {
            issues.push(FieldIssue::UnknownField { path: path.clone() });
            continue;
        };
        if values.is_empty() {
            issues.push(FieldIssue::EmptyValues { path: path.clone() });
        }
        for value in values {
            match value_term(field, value) {
                Ok(object) => {
                    let triple = Triple::new(subject.clone(), Term::iri(path.as_str()), object)
                        .expect("IRI subject and predicate");
                    graph.insert(triple);
                }
                Err(issue) => issues.push(issue),
            }
        }
    }
    if issues.is_empty() {
        Ok(graph)
    } else {
        Err(MaterializeError { issues })
    }
}

fn value_term(field: &FormField, value: &str) -> Result<Term, FieldIssue> {
    if let Some(option) = field.options.iter().flatten().find(|o| o.value == value) {
        return Ok(match &option.datatype {
            Some(dt) => Term::typed(value, dt.as_str()),
            None => Term::iri(value),
        });
    }
    match field.value_kind {
        ValueKind::Iri if is_absolute_iri(value) => Ok(Term::iri(value)),
        ValueKind::Iri => Err(FieldIssue::NotAnIri {
            path: field.path.clone(),
            value: value.to_string(),
        }),
        ValueKind::Literal => {
            let datatype = field.datatype.as_deref().unwrap_or(xsd::STRING);
            match validate_lexical(value, datatype) {
                LexicalCheck::Invalid => Err(FieldIssue::InvalidLexical {
                    path: field.path.clone(),
                    value: value.to_string(),
                    datatype: datatype.to_string(),
                }),
                LexicalCheck::Valid | LexicalCheck::UnknownDatatype => Ok(Term::typed(value, datatype)),
            }
        }
    }
}

pub(crate) fn is_absolute_iri(value: &str) -> bool {
    !value.chars().any(|c| c.is_whitespace() || "<>\"{}|^`\\".contains(c)) && url::Url::parse(value).is_ok()
}
