use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::rdf::term::{escape_iri, escape_string};
use crate::rdf::{Graph, Term};
use crate::vocab::{rdf, xsd};

/// Deterministic Turtle rendering: prefixes sorted, subjects in term order,
/// `rdf:type` first and remaining predicates sorted, objects sorted.
/// Blank nodes are relabeled `b0, b1, ...` in order of first appearance.
pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = String::new();
    for (prefix, ns) in graph.prefixes() {
        let _ = writeln!(out, "@prefix {prefix}: <{}> .", escape_iri(ns));
    }

    let writer = TermWriter::new(graph);
    let mut by_subject: BTreeMap<&Term, BTreeMap<(bool, &Term), Vec<&Term>>> = BTreeMap::new();
    for t in graph.iter() {
        let is_type = t.predicate().as_iri() == Some(rdf::TYPE);
        by_subject
            .entry(t.subject())
            .or_default()
            .entry((!is_type, t.predicate()))
            .or_default()
            .push(t.object());
    }

    for (subject, predicates) in by_subject {
        out.push('\n');
        out.push_str(&writer.term(subject));
        let count = predicates.len();
        for (i, ((not_type, predicate), objects)) in predicates.into_iter().enumerate() {
            let verb = if not_type {
                writer.term(predicate)
            } else {
                "a".to_string()
            };
            if i == 0 {
                let _ = write!(out, " {verb} ");
            } else {
                let _ = write!(out, "    {verb} ");
            }
            let rendered: Vec<String> = objects.into_iter().map(|o| writer.term(o)).collect();
            out.push_str(&rendered.join(", "));
            out.push_str(if i + 1 == count { " .\n" } else { " ;\n" });
        }
    }
    out
}

struct TermWriter<'a> {
    prefixes: &'a BTreeMap<String, String>,
    blanks: BTreeMap<&'a str, usize>,
}

impl<'a> TermWriter<'a> {
    fn new(graph: &'a Graph) -> Self {
        let mut blanks = BTreeMap::new();
        for t in graph.iter() {
            for term in [t.subject(), t.object()] {
                if let Term::Blank(label) = term {
                    let next = blanks.len();
                    blanks.entry(label.as_str()).or_insert(next);
                }
            }
        }
        TermWriter {
            prefixes: graph.prefixes(),
            blanks,
        }
    }

    fn term(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Blank(label) => format!("_:b{}", self.blanks.get(label.as_str()).copied().unwrap_or(0)),
            Term::Literal(l) => {
                let mut s = format!("\"{}\"", escape_string(l.lexical()));
                if let Some(tag) = l.language() {
                    s.push('@');
                    s.push_str(tag);
                } else if l.datatype() != xsd::STRING {
                    s.push_str("^^");
                    s.push_str(&self.iri(l.datatype()));
                }
                s
            }
        }
    }

    fn iri(&self, iri: &str) -> String {
        let best = self
            .prefixes
            .iter()
            .filter(|(_, ns)| !ns.is_empty() && iri.starts_with(ns.as_str()))
            .filter(|(_, ns)| is_safe_local(&iri[ns.len()..]))
            .max_by_key(|(_, ns)| ns.len());
        match best {
            Some((prefix, ns)) => format!("{prefix}:{}", &iri[ns.len()..]),
            None => format!("<{}>", escape_iri(iri)),
        }
    }
}

/// Local names we are willing to emit without escapes.
fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    let Some(first) = chars.next() else {
        return true;
    };
    if !(first.is_ascii_alphanumeric() || first == '_') {
        return false;
    }
    if !local.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')) {
        return false;
    }
    !local.ends_with('.')
}
