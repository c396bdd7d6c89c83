//! Compilation of node shapes into abstract form schemas.

mod compile;
mod label;
mod schema;

pub use compile::{compile_form, CompileError};
pub use label::derive_label;
pub use schema::{
    parse_form_schema, serialize_form_schema, FieldOption, FormField, FormSchema, LiveCheck, MaxOccurs,
    SchemaParseError, ValueKind, Widget, SCHEMA_VERSION,
};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::custom::{Condition, ValidatorRegistry};
    use crate::rdf::{parse_turtle, Term};
    use crate::shacl::{load_shapes, resolve_inheritance, NodeShape, PropertyShape, ShapesGraph};
    use crate::vocab::{rdf, xsd};

    const RESOURCE: &str = include_str!("../../fixtures/resource_shape.ttl");
    const SHAPE: &str = "http://schema.org/BibliographicResourceShape";
    const TITLE: &str = "http://purl.org/dc/terms/title";
    const DOI_PATH: &str = "http://purl.org/spar/datacite/hasIdentifier";
    const JA: &str = "http://purl.org/spar/fabio/JournalArticle";

    fn resource_shape() -> NodeShape {
        let sg: ShapesGraph =
            resolve_inheritance(&load_shapes(&parse_turtle(RESOURCE, None).unwrap()).unwrap()).unwrap();
        sg.get(SHAPE).unwrap().clone()
    }

    fn no_overrides() -> BTreeMap<String, String> {
        BTreeMap::new()
    }

    #[test]
    fn resource_form() {
        let schema = compile_form(&resource_shape(), &[], &no_overrides()).unwrap();
        assert_eq!(schema.schema_version, "1");
        assert_eq!(schema.target_class, "http://purl.org/spar/fabio/Expression");
        assert_eq!(schema.fields.len(), 2);

        let ty = &schema.fields[0];
        assert_eq!(ty.path, rdf::TYPE);
        assert_eq!(ty.widget, Widget::Select);
        assert!(ty.required);
        assert_eq!((ty.min_occurs, ty.max_occurs), (1, MaxOccurs::Bounded(2)));
        assert_eq!(ty.value_kind, ValueKind::Iri);
        let labels: Vec<&str> = ty.options.as_ref().unwrap().iter().map(|o| o.label.as_str()).collect();
        assert_eq!(
            labels,
            ["Archival Document", "Book", "Book Chapter", "Journal Article", "Thesis", "Proceedings Paper"]
        );

        let title = &schema.fields[1];
        assert_eq!(title.path, TITLE);
        assert_eq!(title.widget, Widget::Text);
        assert!(!title.required);
        assert_eq!(title.max_occurs, MaxOccurs::Bounded(1));
        assert_eq!(title.live_checks, vec![LiveCheck::Datatype(xsd::STRING.into())]);
        assert_eq!(title.options, None);
    }

    #[test]
    fn unconstrained_path() {
        let shape = NodeShape {
            id: "http://e/S".into(),
            target_class: Some("http://e/C".into()),
            super_shapes: vec![],
            properties: vec![PropertyShape {
                path: "http://e/note".into(),
                constraints: vec![],
                source_order: 0,
            }],
        };
        let schema = compile_form(&shape, &[], &no_overrides()).unwrap();
        let f = &schema.fields[0];
        assert_eq!((f.widget, f.required, f.max_occurs), (Widget::Text, false, MaxOccurs::Unbounded));
        assert_eq!(f.label, "Note");
    }

    #[test]
    fn conditional_doi_field() {
        let registry = ValidatorRegistry::builtin();
        let cond = Condition::new(rdf::TYPE, Term::iri(JA));
        let bindings = [registry.bind("doi_resolves", SHAPE, DOI_PATH, Some(cond.clone())).unwrap()];
        let schema = compile_form(&resource_shape(), &bindings, &no_overrides()).unwrap();
        assert_eq!(schema.fields.len(), 3);
        let doi = &schema.fields[2];
        assert_eq!(doi.path, DOI_PATH);
        assert_eq!(doi.visible_when, Some(cond));
        assert_eq!(doi.async_validators, ["doi_resolves"]);
        assert_eq!(doi.widget, Widget::Url);
        assert!(!doi.required);
    }

    #[test]
    fn syntactic_bindings_become_live_checks() {
        let registry = ValidatorRegistry::builtin();
        let bindings = [
            registry.bind("doi_syntax", SHAPE, DOI_PATH, None).unwrap(),
            registry.bind("doi_resolves", SHAPE, DOI_PATH, None).unwrap(),
        ];
        let schema = compile_form(&resource_shape(), &bindings, &no_overrides()).unwrap();
        let doi = schema.field(DOI_PATH).unwrap();
        assert_eq!(doi.live_checks, vec![LiveCheck::Validator("doi_syntax".into())]);
        assert_eq!(doi.visible_when, None);
    }

    #[test]
    fn overrides_apply() {
        let overrides = BTreeMap::from([(TITLE.to_string(), "Title of the work".to_string())]);
        let schema = compile_form(&resource_shape(), &[], &overrides).unwrap();
        assert_eq!(schema.fields[1].label, "Title of the work");
    }

    #[test]
    fn errors() {
        let mut shape = resource_shape();
        shape.properties.clear();
        assert!(matches!(compile_form(&shape, &[], &no_overrides()), Err(CompileError::NothingToCompile(_))));
        let mut shape = resource_shape();
        shape.target_class = None;
        assert!(matches!(compile_form(&shape, &[], &no_overrides()), Err(CompileError::NoTargetClass(_))));
    }

    #[test]
    fn serialization() {
        let registry = ValidatorRegistry::builtin();
        let cond = Condition::new(rdf::TYPE, Term::iri(JA));
        let bindings = [registry.bind("doi_resolves", SHAPE, DOI_PATH, Some(cond)).unwrap()];
        let schema = compile_form(&resource_shape(), &bindings, &no_overrides()).unwrap();
        let a = serialize_form_schema(&schema);
        let b = serialize_form_schema(&compile_form(&resource_shape(), &bindings, &no_overrides()).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"schemaVersion":"1","shapeId":"#));
        assert!(a.contains(r#""maxOccurs":2"#));
        assert!(a.contains(r#""maxOccurs":"unbounded""#));
        assert!(a.contains(r#"{"kind":"datatype","argument":"http://www.w3.org/2001/XMLSchema#string"}"#));
        assert_eq!(parse_form_schema(&a).unwrap(), schema);
        let future = a.replace(r#""schemaVersion":"1""#, r#""schemaVersion":"2""#);
        assert!(matches!(parse_form_schema(&future), Err(SchemaParseError::Version(v)) if v == "2"));
    }

    #[test]
    fn merged_paths() {
        let shape = NodeShape {
            id: "http://e/S".into(),
            target_class: Some("http://e/C".into()),
            super_shapes: vec![],
            properties: vec![
                PropertyShape {
                    path: "http://e/p".into(),
                    constraints: vec![
                        Constraint::MaxCount(3),
                        Constraint::InList(vec![Term::iri("http://e/a"), Term::iri("http://e/b")]),
                    ],
                    source_order: 0,
                },
                PropertyShape {
                    path: "http://e/q".into(),
                    constraints: vec![],
                    source_order: 1,
                },
                PropertyShape {
                    path: "http://e/p".into(),
                    constraints: vec![
                        Constraint::MinCount(1),
                        Constraint::MaxCount(2),
                        Constraint::InList(vec![Term::iri("http://e/b"), Term::iri("http://e/c")]),
                    ],
                    source_order: 2,
                },
            ],
        };
        let schema = compile_form(&shape, &[], &no_overrides()).unwrap();
        assert_eq!(schema.fields.len(), 2);
        let p = &schema.fields[0];
        assert_eq!((p.min_occurs, p.max_occurs), (1, MaxOccurs::Bounded(2)));
        let values: Vec<&str> = p.options.as_ref().unwrap().iter().map(|o| o.value.as_str()).collect();
        assert_eq!(values, ["http://e/b"]);
    }

    use crate::shacl::Constraint;
}
