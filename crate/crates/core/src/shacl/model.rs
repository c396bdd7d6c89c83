use std::collections::BTreeMap;
use std::fmt;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::rdf::Term;
use crate::vocab::sh;

/// The constraint components this engine evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    MinCount,
    MaxCount,
    InList,
    Datatype,
    ClassOf,
    NodeKind,
    Pattern,
    HasValue,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::MinCount => "min_count",
            ComponentKind::MaxCount => "max_count",
            ComponentKind::InList => "in_list",
            ComponentKind::Datatype => "datatype",
            ComponentKind::ClassOf => "class_of",
            ComponentKind::NodeKind => "node_kind",
            ComponentKind::Pattern => "pattern",
            ComponentKind::HasValue => "has_value",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            ComponentKind::MinCount,
            ComponentKind::MaxCount,
            ComponentKind::InList,
            ComponentKind::Datatype,
            ComponentKind::ClassOf,
            ComponentKind::NodeKind,
            ComponentKind::Pattern,
            ComponentKind::HasValue,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Iri,
    BlankNode,
    Literal,
    BlankNodeOrIri,
    BlankNodeOrLiteral,
    IriOrLiteral,
}

impl NodeKind {
    pub fn from_iri(iri: &str) -> Option<Self> {
        Some(match iri {
            sh::IRI => NodeKind::Iri,
            sh::BLANK_NODE => NodeKind::BlankNode,
            sh::LITERAL => NodeKind::Literal,
            sh::BLANK_NODE_OR_IRI => NodeKind::BlankNodeOrIri,
            sh::BLANK_NODE_OR_LITERAL => NodeKind::BlankNodeOrLiteral,
            sh::IRI_OR_LITERAL => NodeKind::IriOrLiteral,
            _ => return None,
        })
    }

    pub fn iri(self) -> &'static str {
        match self {
            NodeKind::Iri => sh::IRI,
            NodeKind::BlankNode => sh::BLANK_NODE,
            NodeKind::Literal => sh::LITERAL,
            NodeKind::BlankNodeOrIri => sh::BLANK_NODE_OR_IRI,
            NodeKind::BlankNodeOrLiteral => sh::BLANK_NODE_OR_LITERAL,
            NodeKind::IriOrLiteral => sh::IRI_OR_LITERAL,
        }
    }

    pub fn accepts(self, term: &Term) -> bool {
        match self {
            NodeKind::Iri => term.is_iri(),
            NodeKind::BlankNode => term.is_blank(),
            NodeKind::Literal => term.is_literal(),
            NodeKind::BlankNodeOrIri => !term.is_literal(),
            NodeKind::BlankNodeOrLiteral => !term.is_iri(),
            NodeKind::IriOrLiteral => !term.is_blank(),
        }
    }
}

/// A compiled `sh:pattern` (with optional `sh:flags`).
#[derive(Clone, Debug)]
pub struct Pattern {
    source: String,
    flags: Option<String>,
    regex: Regex,
}

impl Pattern {
    /// Supported flags: `i`, `m`, `s`, `x` (as in the `regex` crate).
    pub fn new(source: &str, flags: Option<&str>) -> Result<Self, regex::Error> {
        let inline = match flags {
            Some(f) if !f.is_empty() => format!("(?{f})"),
            _ => String::new(),
        };
        let regex = Regex::new(&format!("{inline}{source}"))?;
        Ok(Pattern {
            source: source.to_string(),
            flags: flags.map(str::to_string),
            regex,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn flags(&self) -> Option<&str> {
        self.flags.as_deref()
    }

    pub fn is_match(&self, text: &str) -> bool {
        self.regex.is_match(text)
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.flags == other.flags
    }
}

impl Eq for Pattern {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    MinCount(u64),
    MaxCount(u64),
    /// Non-empty, in `sh:in` order.
    InList(Vec<Term>),
    Datatype(String),
    ClassOf(String),
    NodeKind(NodeKind),
    Pattern(Pattern),
    HasValue(Term),
}

impl Constraint {
    pub fn component(&self) -> ComponentKind {
        match self {
            Constraint::MinCount(_) => ComponentKind::MinCount,
            Constraint::MaxCount(_) => ComponentKind::MaxCount,
            Constraint::InList(_) => ComponentKind::InList,
            Constraint::Datatype(_) => ComponentKind::Datatype,
            Constraint::ClassOf(_) => ComponentKind::ClassOf,
            Constraint::NodeKind(_) => ComponentKind::NodeKind,
            Constraint::Pattern(_) => ComponentKind::Pattern,
            Constraint::HasValue(_) => ComponentKind::HasValue,
        }
    }

    /// True for a constraint no value set can violate (`min_count 0`).
    pub fn is_vacuous(&self) -> bool {
        matches!(self, Constraint::MinCount(0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyShape {
    pub path: String,
    pub constraints: Vec<Constraint>,
    /// Position within the owning node shape; unique per node shape.
    pub source_order: usize,
}

impl PropertyShape {
    pub fn min_count(&self) -> Option<u64> {
        self.constraints.iter().find_map(|c| match c {
            Constraint::MinCount(n) => Some(*n),
            _ => None,
        })
    }

    pub fn max_count(&self) -> Option<u64> {
        self.constraints.iter().find_map(|c| match c {
            Constraint::MaxCount(n) => Some(*n),
            _ => None,
        })
    }

    pub fn in_list(&self) -> Option<&[Term]> {
        self.constraints.iter().find_map(|c| match c {
            Constraint::InList(items) => Some(items.as_slice()),
            _ => None,
        })
    }

    pub fn datatype(&self) -> Option<&str> {
        self.constraints.iter().find_map(|c| match c {
            Constraint::Datatype(dt) => Some(dt.as_str()),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeShape {
    pub id: String,
    pub target_class: Option<String>,
    /// Shapes this one inherits property shapes from (`rdfs:subClassOf`).
    /// Empty once inheritance has been resolved.
    pub super_shapes: Vec<String>,
    pub properties: Vec<PropertyShape>,
}

/// A set of node shapes, sorted by id, plus load-time warnings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShapesGraph {
    pub(crate) shapes: Vec<NodeShape>,
    pub(crate) prefixes: BTreeMap<String, String>,
    pub(crate) warnings: Vec<String>,
}

impl ShapesGraph {
    pub fn new(shapes: Vec<NodeShape>) -> Self {
        let mut sg = ShapesGraph {
            shapes,
            ..Default::default()
        };
        sg.shapes.sort_by(|a, b| a.id.cmp(&b.id));
        sg
    }

    pub fn shapes(&self) -> &[NodeShape] {
        &self.shapes
    }

    pub fn get(&self, id: &str) -> Option<&NodeShape> {
        self.shapes
            .binary_search_by(|s| s.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.shapes[i])
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Prefixes of the Turtle document the shapes were read from.
    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    /// Expands `prefix:local` with the document prefixes; absolute IRIs and
    /// unknown prefixes are returned unchanged.
    pub fn expand_curie(&self, text: &str) -> String {
        if let Some((prefix, local)) = text.split_once(':') {
            if !local.starts_with("//") {
                if let Some(ns) = self.prefixes.get(prefix) {
                    return format!("{ns}{local}");
                }
            }
        }
        text.to_string()
    }
}

/// The shape targeting `class_iri`; the smallest id wins on ties.
pub fn shape_for_class<'a>(shapes: &'a ShapesGraph, class_iri: &str) -> Option<&'a NodeShape> {
    shapes
        .shapes
        .iter()
        .find(|s| s.target_class.as_deref() == Some(class_iri))
}
