//! Naive SHACL-subset evaluator used as a reference for the engine.
//!
//! Works from a flat list of triples with linear scans, recomputes focus
//! nodes and value sets from scratch, and does its own lexical checks for
//! xsd:string, xsd:integer and xsd:boolean (the datatypes the random
//! generators use).

use std::collections::BTreeSet;

use regex::Regex;
use shaclform::rdf::{Graph, Term};
use shaclform::shacl::{Constraint, NodeKind, ShapesGraph};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Expected {
    pub shape: String,
    pub focus: Term,
    pub order: usize,
    pub component: &'static str,
    pub index: usize,
    pub path: String,
    pub value: Option<Term>,
}

/// Every expected result, sorted by shape, focus, property order,
/// component name, constraint position and value.
pub fn evaluate(data: &Graph, shapes: &ShapesGraph, extra_focus: &[(&str, Term)]) -> Vec<Expected> {
    let triples: Vec<(Term, Term, Term)> = data
        .iter()
        .map(|t| (t.subject().clone(), t.predicate().clone(), t.object().clone()))
        .collect();
    let has = |s: &Term, p: &str, o: &Term| triples.iter().any(|(a, b, c)| a == s && b.value() == p && b.is_iri() && c == o);

    let mut out = Vec::new();
    for shape in shapes.shapes() {
        let mut focus: BTreeSet<Term> = BTreeSet::new();
        if let Some(class) = &shape.target_class {
            for (s, p, o) in &triples {
                if p.value() == RDF_TYPE && o.is_iri() && o.value() == class {
                    focus.insert(s.clone());
                }
            }
        }
        for (id, node) in extra_focus {
            if *id == shape.id {
                focus.insert(node.clone());
            }
        }
        for node in &focus {
            for prop in &shape.properties {
                let mut values: Vec<Term> = triples
                    .iter()
                    .filter(|(s, p, _)| s == node && p.value() == prop.path)
                    .map(|(_, _, o)| o.clone())
                    .collect();
                values.sort();
                values.dedup();
                for (index, c) in prop.constraints.iter().enumerate() {
                    let mut emit = |component: &'static str, value: Option<Term>| {
                        out.push(Expected {
                            shape: shape.id.clone(),
                            focus: node.clone(),
                            order: prop.source_order,
                            component,
                            index,
                            path: prop.path.clone(),
                            value,
                        })
                    };
                    match c {
                        Constraint::MinCount(n) => {
                            if (values.len() as u64) < *n {
                                emit("min_count", None);
                            }
                        }
                        Constraint::MaxCount(n) => {
                            if values.len() as u64 > *n {
                                emit("max_count", None);
                            }
                        }
                        Constraint::InList(list) => {
                            for v in &values {
                                if !list.iter().any(|x| x == v) {
                                    emit("in_list", Some(v.clone()));
                                }
                            }
                        }
                        Constraint::Datatype(dt) => {
                            for v in &values {
                                let ok = match v {
                                    Term::Literal(l) => {
                                        let actual = if l.language().is_some() { LANG_STRING } else { l.datatype() };
                                        actual == dt && lexical_ok(l.lexical(), dt)
                                    }
                                    _ => false,
                                };
                                if !ok {
                                    emit("datatype", Some(v.clone()));
                                }
                            }
                        }
                        Constraint::ClassOf(class) => {
                            for v in &values {
                                if v.is_literal() || !has(v, RDF_TYPE, &Term::iri(class.as_str())) {
                                    emit("class_of", Some(v.clone()));
                                }
                            }
                        }
                        Constraint::NodeKind(kind) => {
                            for v in &values {
                                let ok = match kind {
                                    NodeKind::Iri => v.is_iri(),
                                    NodeKind::BlankNode => v.is_blank(),
                                    NodeKind::Literal => v.is_literal(),
                                    NodeKind::BlankNodeOrIri => !v.is_literal(),
                                    NodeKind::BlankNodeOrLiteral => !v.is_iri(),
                                    NodeKind::IriOrLiteral => !v.is_blank(),
                                };
                                if !ok {
                                    emit("node_kind", Some(v.clone()));
                                }
                            }
                        }
                        Constraint::Pattern(p) => {
                            let re = Regex::new(&match p.flags() {
                                Some(f) if !f.is_empty() => format!("(?{f}){}", p.source()),
                                _ => p.source().to_string(),
                            })
                            .unwrap();
                            for v in &values {
                                if v.is_blank() || !re.is_match(v.value()) {
                                    emit("pattern", Some(v.clone()));
                                }
                            }
                        }
                        Constraint::HasValue(t) => {
                            if !values.contains(t) {
                                emit("has_value", None);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn lexical_ok(lexical: &str, datatype: &str) -> bool {
    match datatype.strip_prefix(XSD) {
        Some("integer") => {
            let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        }
        Some("boolean") => matches!(lexical, "true" | "false" | "1" | "0"),
        _ => true,
    }
}
