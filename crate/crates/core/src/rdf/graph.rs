use std::collections::{BTreeMap, BTreeSet};
use std::ops::Bound;

use super::term::{Term, Triple};

/// A set of triples plus the prefix map it was read with.
///
/// Iteration is in sorted (subject, predicate, object) order. The insertion
/// sequence of each triple is kept so that callers interpreting document
/// order (e.g. property shape order) can recover it.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: BTreeMap<Triple, usize>,
    prefixes: BTreeMap<String, String>,
    blank_labels: BTreeSet<String>,
    next_seq: usize,
    next_blank: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains_key(&triple) {
            return false;
        }
        for term in [triple.subject(), triple.object()] {
            if let Term::Blank(label) = term {
                self.blank_labels.insert(label.clone());
            }
        }
        self.triples.insert(triple, self.next_seq);
        self.next_seq += 1;
        true
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains_key(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.keys()
    }

    /// Insertion sequence number of a triple, if present.
    pub fn position(&self, triple: &Triple) -> Option<usize> {
        self.triples.get(triple).copied()
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(prefix.into(), namespace.into());
    }

    /// A blank node whose label is not yet used in this graph.
    pub fn fresh_blank(&mut self) -> Term {
        loop {
            let label = format!("b{}", self.next_blank);
            self.next_blank += 1;
            if !self.blank_labels.contains(&label) {
                self.blank_labels.insert(label.clone());
                return Term::Blank(label);
            }
        }
    }

    /// All triples matching the bound positions, in sorted order.
    pub fn match_triples(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Term>,
        object: Option<&Term>,
    ) -> Vec<&Triple> {
        let keep = |t: &&Triple| {
            predicate.is_none_or(|p| t.predicate() == p) && object.is_none_or(|o| t.object() == o)
        };
        match subject {
            Some(s) => self
                .subject_range(s)
                .filter(|t| t.subject() == s)
                .filter(keep)
                .collect(),
            None => self.triples.keys().filter(keep).collect(),
        }
    }

    /// Objects of `(subject, predicate, *)` in sorted order.
    pub fn objects<'a>(&'a self, subject: &'a Term, predicate: &'a Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.subject_range(subject)
            .filter(move |t| t.subject() == subject && t.predicate() == predicate)
            .map(Triple::object)
    }

    /// Subjects of `(*, predicate, object)` in sorted order, without duplicates.
    pub fn subjects(&self, predicate: &Term, object: &Term) -> Vec<&Term> {
        let mut out: Vec<&Term> = self
            .triples
            .keys()
            .filter(|t| t.predicate() == predicate && t.object() == object)
            .map(Triple::subject)
            .collect();
        out.dedup();
        out
    }

    fn subject_range(&self, subject: &Term) -> impl Iterator<Item = &Triple> + '_ {
        let subject = subject.clone();
        // Term::Iri("") is the minimum of the Term ordering.
        let lower = Triple::new(subject.clone(), Term::iri(""), Term::iri(""))
            .ok()
            .map(Bound::Included)
            .unwrap_or(Bound::Unbounded);
        self.triples
            .range((lower, Bound::Unbounded))
            .map(|(t, _)| t)
            .take_while(move |t| subject.is_literal() || *t.subject() == subject)
    }
}

impl PartialEq for Graph {
    /// Triple-set equality; blank labels must match exactly.
    fn eq(&self, other: &Self) -> bool {
        self.triples.len() == other.triples.len() && self.triples.keys().eq(other.triples.keys())
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}
