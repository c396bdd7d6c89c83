use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RdfError;
use crate::vocab::{rdf, xsd};

/// Discriminant of a [`Term`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Iri,
    Blank,
    Literal,
}

/// A literal value. Plain literals carry `xsd:string`; language-tagged
/// literals carry `rdf:langString` and a lowercased tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: String,
    datatype: String,
    language: Option<String>,
}

impl Literal {
    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    /// True for literals without a language tag and with datatype `xsd:string`.
    pub fn is_simple(&self) -> bool {
        self.language.is_none() && self.datatype == xsd::STRING
    }
}

/// An RDF term: IRI, blank node or literal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Self {
        Term::Iri(iri.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    /// A plain literal, i.e. one typed `xsd:string`.
    pub fn literal(lexical: impl Into<String>) -> Self {
        Self::typed(lexical, xsd::STRING)
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            datatype: datatype.into(),
            language: None,
        })
    }

    pub fn lang(lexical: impl Into<String>, tag: impl AsRef<str>) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            datatype: rdf::LANG_STRING.to_string(),
            language: Some(tag.as_ref().to_ascii_lowercase()),
        })
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Iri(_) => TermKind::Iri,
            Term::Blank(_) => TermKind::Blank,
            Term::Literal(_) => TermKind::Literal,
        }
    }

    /// IRI text, blank label, or lexical form.
    pub fn value(&self) -> &str {
        match self {
            Term::Iri(v) | Term::Blank(v) => v,
            Term::Literal(l) => &l.lexical,
        }
    }

    pub fn datatype(&self) -> Option<&str> {
        match self {
            Term::Literal(l) if l.language.is_none() => Some(&l.datatype),
            _ => None,
        }
    }

    pub fn language(&self) -> Option<&str> {
        match self {
            Term::Literal(l) => l.language(),
            _ => None,
        }
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }
}

/// N-Triples rendering, also valid in SPARQL and Turtle.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{}>", escape_iri(iri)),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(l) => {
                write!(f, "\"{}\"", escape_string(&l.lexical))?;
                if let Some(tag) = &l.language {
                    write!(f, "@{tag}")
                } else if l.datatype != xsd::STRING {
                    write!(f, "^^<{}>", escape_iri(&l.datatype))
                } else {
                    Ok(())
                }
            }
        }
    }
}

pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn escape_iri(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
            out.push_str(&format!("\\u{:04X}", c as u32));
        } else {
            out.push(c);
        }
    }
    out
}

/// A subject-predicate-object statement. The constructor rejects literal
/// subjects and non-IRI predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, RdfError> {
        if subject.is_literal() {
            return Err(RdfError::LiteralSubject(subject.to_string()));
        }
        if !predicate.is_iri() {
            return Err(RdfError::NonIriPredicate(predicate.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Term, Term) {
        (self.subject, self.predicate, self.object)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

// JSON shape shared by reports, form schemas and conditions:
// {"type": "iri"|"blank"|"literal", "value": ..., "datatype"?: ..., "language"?: ...}
#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(rename = "type")]
    kind: TermKind,
    value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    datatype: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    language: Option<String>,
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TermRepr {
            kind: self.kind(),
            value: self.value().to_string(),
            datatype: self.datatype().map(str::to_string),
            language: self.language().map(str::to_string),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = TermRepr::deserialize(deserializer)?;
        match repr.kind {
            TermKind::Iri => Ok(Term::Iri(repr.value)),
            TermKind::Blank => Ok(Term::Blank(repr.value)),
            TermKind::Literal => match (repr.language, repr.datatype) {
                (Some(_), Some(_)) => Err(D::Error::custom(
                    "literal cannot carry both datatype and language",
                )),
                (Some(tag), None) => Ok(Term::lang(repr.value, tag)),
                (None, Some(dt)) => Ok(Term::typed(repr.value, dt)),
                (None, None) => Ok(Term::literal(repr.value)),
            },
        }
    }
}
