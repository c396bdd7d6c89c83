//! Interpretation of a shapes graph into typed node and property shapes.
//!
//! Supported constraint components: `sh:minCount`, `sh:maxCount`, `sh:in`,
//! `sh:datatype`, `sh:class`, `sh:nodeKind`, `sh:pattern` (+ `sh:flags`) and
//! `sh:hasValue`. `sh:minValue`/`sh:maxValue` are accepted as cardinality
//! spellings with a warning. `rdfs:subClassOf` between node shapes is read as
//! property-shape inheritance.

mod inherit;
mod loader;
mod model;

use thiserror::Error;

use crate::rdf::RdfError;

pub use inherit::resolve_inheritance;
pub use loader::load_shapes;
pub use model::{
    shape_for_class, ComponentKind, Constraint, NodeKind, NodeShape, Pattern, PropertyShape, ShapesGraph,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("node shape {0} has no IRI")]
    AnonymousNodeShape(String),
    #[error("property shape of <{0}> has no sh:path")]
    MissingPath(String),
    #[error("property shape of <{shape}>: unsupported path {path}")]
    UnsupportedPath { shape: String, path: String },
    #[error("<{shape}> path <{path}>: <{predicate}> expects a non-negative integer, found {found}")]
    ExpectedInteger {
        shape: String,
        path: String,
        predicate: String,
        found: String,
    },
    #[error("<{shape}>: <{predicate}> expects an IRI, found {found}")]
    ExpectedIri {
        shape: String,
        predicate: String,
        found: String,
    },
    #[error("<{shape}>: <{predicate}> expects a literal, found {found}")]
    ExpectedLiteral {
        shape: String,
        predicate: String,
        found: String,
    },
    #[error("<{shape}> path <{path}>: sh:in list is empty")]
    EmptyInList { shape: String, path: String },
    #[error("<{shape}> path <{path}>: {source}")]
    MalformedList {
        shape: String,
        path: String,
        source: RdfError,
    },
    #[error("<{shape}>: invalid pattern {pattern:?}: {reason}")]
    InvalidPattern {
        shape: String,
        pattern: String,
        reason: String,
    },
    #[error("inheritance cycle: {}", .0.join(" -> "))]
    InheritanceCycle(Vec<String>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle, Graph, Term, Triple};
    use crate::vocab::{rdf, sh, xsd};
    use proptest::prelude::*;

    const RESOURCE: &str = include_str!("../../fixtures/resource_shape.ttl");
    const RESOURCE_STANDARD: &str = include_str!("../../fixtures/resource_shape_standard.ttl");
    const ENTITY: &str = include_str!("../../fixtures/bibliographic_entity.ttl");
    const FABIO: &str = "http://purl.org/spar/fabio/";
    const RESOURCE_SHAPE: &str = "http://schema.org/BibliographicResourceShape";

    fn load(doc: &str) -> ShapesGraph {
        load_shapes(&parse_turtle(doc, None).unwrap()).unwrap()
    }

    fn shape(id: &str, supers: &[&str], paths: &[&str]) -> NodeShape {
        NodeShape {
            id: id.into(),
            target_class: None,
            super_shapes: supers.iter().map(|s| s.to_string()).collect(),
            properties: paths
                .iter()
                .enumerate()
                .map(|(i, p)| PropertyShape {
                    path: p.to_string(),
                    constraints: vec![],
                    source_order: i,
                })
                .collect(),
        }
    }

    #[test]
    fn empty_graph_gives_empty_shapes() {
        assert!(load_shapes(&Graph::new()).unwrap().is_empty());
    }

    #[test]
    fn resource_shape_structure() {
        let sg = load(RESOURCE);
        assert_eq!(sg.len(), 1);
        let s = &sg.shapes()[0];
        assert_eq!(s.id, RESOURCE_SHAPE);
        assert_eq!(s.target_class.as_deref(), Some("http://purl.org/spar/fabio/Expression"));
        assert_eq!(s.super_shapes, vec!["http://schema.org/BibliographicEntityShape"]);
        assert_eq!(s.properties.len(), 2);

        let ty = &s.properties[0];
        assert_eq!(ty.path, rdf::TYPE);
        let names = ["ArchivalDocument", "Book", "BookChapter", "JournalArticle", "Thesis", "ProceedingsPaper"];
        let list: Vec<Term> = names.iter().map(|n| Term::iri(format!("{FABIO}{n}"))).collect();
        assert_eq!(
            ty.constraints,
            vec![Constraint::InList(list), Constraint::MinCount(1), Constraint::MaxCount(2)]
        );

        let title = &s.properties[1];
        assert_eq!(title.path, "http://purl.org/dc/terms/title");
        assert_eq!(
            title.constraints,
            vec![
                Constraint::Datatype(xsd::STRING.into()),
                Constraint::MinCount(0),
                Constraint::MaxCount(1)
            ]
        );
        let declared: usize = s.properties.iter().map(|p| p.constraints.len()).sum();
        let effective = s.properties.iter().flat_map(|p| &p.constraints).filter(|c| !c.is_vacuous()).count();
        assert_eq!((declared, effective), (6, 5));
        assert_eq!(sg.warnings().iter().filter(|w| w.contains("nonstandard")).count(), 4);
    }

    #[test]
    fn standard_and_nonstandard_spellings_agree() {
        let a = load(RESOURCE);
        let b = load(RESOURCE_STANDARD);
        assert_eq!(a.shapes(), b.shapes());
        assert!(b.warnings().is_empty());
    }

    #[test]
    fn inheritance_appends_parent_properties() {
        let sg = load(&format!("{RESOURCE}\n{ENTITY}"));
        let resolved = resolve_inheritance(&sg).unwrap();
        let s = resolved.get(RESOURCE_SHAPE).unwrap();
        let paths: Vec<&str> = s.properties.iter().map(|p| p.path.as_str()).collect();
        assert_eq!(
            paths,
            vec![rdf::TYPE, "http://purl.org/dc/terms/title", "http://purl.org/dc/terms/identifier"]
        );
        assert!(s.super_shapes.is_empty());
        let orders: Vec<usize> = s.properties.iter().map(|p| p.source_order).collect();
        assert_eq!(orders, vec![0, 1, 2]);
    }

    #[test]
    fn missing_parent_is_a_warning() {
        let resolved = resolve_inheritance(&load(RESOURCE)).unwrap();
        assert_eq!(resolved.get(RESOURCE_SHAPE).unwrap().properties.len(), 2);
        assert!(resolved.warnings().iter().any(|w| w.contains("not found")));
    }

    #[test]
    fn no_parents_is_unchanged() {
        let sg = ShapesGraph::new(vec![shape("http://e/A", &[], &["http://e/p"])]);
        assert_eq!(resolve_inheritance(&sg).unwrap(), sg);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let sg = ShapesGraph::new(vec![
            shape("http://e/A", &["http://e/B"], &[]),
            shape("http://e/B", &["http://e/A"], &[]),
        ]);
        let err = resolve_inheritance(&sg).unwrap_err();
        assert_eq!(
            err,
            ShapeError::InheritanceCycle(vec!["http://e/A".into(), "http://e/B".into(), "http://e/A".into()])
        );
    }

    #[test]
    fn diamond_contributes_once() {
        let sg = ShapesGraph::new(vec![
            shape("http://e/A", &["http://e/B", "http://e/C"], &["a"]),
            shape("http://e/B", &["http://e/D"], &["b"]),
            shape("http://e/C", &["http://e/D"], &["c"]),
            shape("http://e/D", &[], &["d"]),
        ]);
        let r = resolve_inheritance(&sg).unwrap();
        let paths: Vec<&str> = r.get("http://e/A").unwrap().properties.iter().map(|p| p.path.as_str()).collect();
        assert_eq!(paths, vec!["a", "b", "d", "c"]);
    }

    #[test]
    fn resolution_is_idempotent() {
        let once = resolve_inheritance(&load(&format!("{RESOURCE}\n{ENTITY}"))).unwrap();
        let twice = resolve_inheritance(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn shape_lookup_by_class() {
        let sg = resolve_inheritance(&load(RESOURCE)).unwrap();
        assert_eq!(
            shape_for_class(&sg, "http://purl.org/spar/fabio/Expression").map(|s| s.id.as_str()),
            Some(RESOURCE_SHAPE)
        );
        assert!(shape_for_class(&sg, "http://xmlns.com/foaf/0.1/Agent").is_none());

        let mut b = shape("http://e/B", &[], &[]);
        let mut a = shape("http://e/A", &[], &[]);
        b.target_class = Some("http://e/C".into());
        a.target_class = Some("http://e/C".into());
        let sg = ShapesGraph::new(vec![b, a]);
        assert_eq!(shape_for_class(&sg, "http://e/C").unwrap().id, "http://e/A");
    }

    #[test]
    fn structural_errors() {
        let prefix = "@prefix sh: <http://www.w3.org/ns/shacl#> . @prefix ex: <http://e/> .";
        let cases = [
            ("[] a sh:NodeShape .", "AnonymousNodeShape"),
            ("ex:S a sh:NodeShape ; sh:property [ sh:minCount 1 ] .", "MissingPath"),
            ("ex:S a sh:NodeShape ; sh:property [ sh:path ex:p ; sh:minCount ex:one ] .", "ExpectedInteger"),
            ("ex:S a sh:NodeShape ; sh:property [ sh:path ex:p ; sh:maxCount \"-1\" ] .", "ExpectedInteger"),
            ("ex:S a sh:NodeShape ; sh:property [ sh:path ex:p ; sh:in () ] .", "EmptyInList"),
            ("ex:S a sh:NodeShape ; sh:property [ sh:path ex:p ; sh:pattern \"(\" ] .", "InvalidPattern"),
            ("ex:S a sh:NodeShape ; sh:property [ sh:path [ sh:inversePath ex:p ] ] .", "UnsupportedPath"),
        ];
        for (doc, want) in cases {
            let g = parse_turtle(&format!("{prefix}\n{doc}"), None).unwrap();
            let err = load_shapes(&g).unwrap_err();
            assert!(format!("{err:?}").starts_with(want), "{doc}: {err:?}");
        }
    }

    #[test]
    fn unsupported_components_become_warnings() {
        let doc = "@prefix sh: <http://www.w3.org/ns/shacl#> . @prefix ex: <http://e/> .
            ex:S a sh:NodeShape ; sh:sparql [ ] ; sh:or ( ex:A ) ;
              sh:property [ sh:path ex:p ; sh:minLength 3 ; sh:name \"P\" ; sh:datatype ex:custom ] .";
        let sg = load(doc);
        assert_eq!(sg.len(), 1);
        let warnings = sg.warnings().join("\n");
        assert!(warnings.contains("sparql"));
        assert!(warnings.contains("#or"));
        assert!(warnings.contains("minLength"));
        assert!(warnings.contains("not lexically checked"));
        assert!(!warnings.contains("name"));
    }

    #[test]
    fn pattern_flags_and_node_kind() {
        let doc = "@prefix sh: <http://www.w3.org/ns/shacl#> . @prefix ex: <http://e/> .
            ex:S a sh:NodeShape ; sh:property [ sh:path ex:p ; sh:pattern \"^ab$\" ; sh:flags \"i\" ; sh:nodeKind sh:Literal ] .";
        let sg = load(doc);
        let p = &sg.shapes()[0].properties[0];
        let Constraint::Pattern(pat) = &p.constraints[0] else { panic!() };
        assert!(pat.is_match("AB"));
        assert_eq!(p.constraints[1], Constraint::NodeKind(NodeKind::Literal));
    }

    #[test]
    fn expand_curie_uses_document_prefixes() {
        let sg = load(RESOURCE);
        assert_eq!(sg.expand_curie("fabio:Book"), format!("{FABIO}Book"));
        assert_eq!(sg.expand_curie("http://x/y"), "http://x/y");
        assert_eq!(sg.expand_curie("nope:x"), "nope:x");
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let vocab = vec![
            rdf::TYPE, rdf::FIRST, rdf::REST, rdf::NIL, sh::NODE_SHAPE, sh::PROPERTY, sh::PATH,
            sh::MIN_COUNT, sh::MAX_COUNT, sh::IN, sh::DATATYPE, sh::PATTERN, sh::CLASS,
            sh::NODE_KIND, sh::HAS_VALUE, sh::TARGET_CLASS, sh::LITERAL, "http://e/a", "http://e/b",
        ];
        prop_oneof![
            proptest::sample::select(vocab).prop_map(Term::iri),
            (0u8..4).prop_map(|i| Term::blank(format!("x{i}"))),
            prop_oneof![Just("1"), Just("-2"), Just("("), Just("x")].prop_map(Term::literal),
            Just(Term::typed("3", xsd::INTEGER)),
        ]
    }

    proptest! {
        #[test]
        fn load_shapes_never_panics(triples in proptest::collection::vec((arb_term(), arb_term(), arb_term()), 0..40)) {
            let mut g = Graph::new();
            for (s, p, o) in triples {
                if let Ok(t) = Triple::new(s, p, o) {
                    g.insert(t);
                }
            }
            if let Ok(sg) = load_shapes(&g) {
                let _ = resolve_inheritance(&sg);
            }
        }
    }
}
