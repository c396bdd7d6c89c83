use std::collections::HashSet;

use super::{Graph, RdfError, Term};
use crate::vocab::rdf;

/// Reads the RDF collection starting at `head` into its ordered members.
pub fn read_list(graph: &Graph, head: &Term) -> Result<Vec<Term>, RdfError> {
    let nil = Term::iri(rdf::NIL);
    let first = Term::iri(rdf::FIRST);
    let rest = Term::iri(rdf::REST);

    let mut items = Vec::new();
    let mut visited = HashSet::new();
    let mut cell = head.clone();
    while cell != nil {
        if cell.is_literal() {
            return Err(RdfError::MalformedList(format!("literal {cell} used as list cell")));
        }
        if !visited.insert(cell.clone()) {
            return Err(RdfError::MalformedList(format!("cycle detected at {cell}")));
        }
        let item = single(graph.objects(&cell, &first), &cell, "rdf:first")?;
        let next = single(graph.objects(&cell, &rest), &cell, "rdf:rest")?;
        items.push(item.clone());
        cell = next.clone();
    }
    Ok(items)
}

fn single<'a>(
    mut values: impl Iterator<Item = &'a Term>,
    cell: &Term,
    what: &str,
) -> Result<&'a Term, RdfError> {
    match (values.next(), values.next()) {
        (Some(v), None) => Ok(v),
        (None, _) => Err(RdfError::MalformedList(format!("{cell} has no {what}"))),
        (Some(_), Some(_)) => Err(RdfError::MalformedList(format!("{cell} has several {what} values"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle, serialize_turtle, Triple};
    use proptest::prelude::*;

    #[test]
    fn nil_is_empty() {
        assert!(read_list(&Graph::new(), &Term::iri(rdf::NIL)).unwrap().is_empty());
    }

    #[test]
    fn missing_rest_is_malformed() {
        let mut g = Graph::new();
        g.insert(Triple::new(Term::blank("c"), Term::iri(rdf::FIRST), Term::iri("x")).unwrap());
        assert!(matches!(read_list(&g, &Term::blank("c")), Err(RdfError::MalformedList(_))));
    }

    #[test]
    fn cycle_is_detected() {
        let mut g = Graph::new();
        for (cell, next) in [("c1", "c2"), ("c2", "c1")] {
            g.insert(Triple::new(Term::blank(cell), Term::iri(rdf::FIRST), Term::iri("x")).unwrap());
            g.insert(Triple::new(Term::blank(cell), Term::iri(rdf::REST), Term::blank(next)).unwrap());
        }
        let err = read_list(&g, &Term::blank("c1")).unwrap_err();
        assert!(err.to_string().contains("cycle"));
    }

    proptest! {
        #[test]
        fn serialized_lists_read_back_in_order(items in proptest::collection::vec(0u32..1000, 0..=20)) {
            let members: Vec<String> = items.iter().map(|i| format!("<http://e/i{i}>")).collect();
            let doc = format!("<http://e/s> <http://e/p> ( {} ) .", members.join(" "));
            let g = parse_turtle(&doc, None).unwrap();
            let reparsed = parse_turtle(&serialize_turtle(&g), None).unwrap();
            let head = reparsed
                .objects(&Term::iri("http://e/s"), &Term::iri("http://e/p"))
                .next()
                .unwrap()
                .clone();
            let got = read_list(&reparsed, &head).unwrap();
            prop_assert_eq!(got.len(), items.len());
            let want: Vec<Term> = items.iter().map(|i| Term::iri(format!("http://e/i{i}"))).collect();
            prop_assert_eq!(got, want);
        }
    }
}
