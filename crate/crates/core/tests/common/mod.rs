#![allow(dead_code)]

use std::collections::BTreeMap;

use shaclform::custom::{Condition, ValidatorBinding, ValidatorRegistry};
use shaclform::form::{compile_form, FormSchema};
use shaclform::rdf::{parse_turtle, Term};
use shaclform::shacl::{load_shapes, resolve_inheritance, ShapesGraph};
use shaclform::vocab::rdf;
use shaclform_testkit::fixtures::{BIBLIOGRAPHIC_ENTITY, RESOURCE_TTL, HAS_IDENTIFIER, JOURNAL_ARTICLE, OCDM, RESOURCE_SHAPE};

pub fn shapes(doc: &str) -> ShapesGraph {
    resolve_inheritance(&load_shapes(&parse_turtle(doc, None).unwrap()).unwrap()).unwrap()
}

/// The verbatim resource shape plus its super-shape.
pub fn resource_shapes() -> ShapesGraph {
    shapes(&format!("{RESOURCE_TTL}\n{BIBLIOGRAPHIC_ENTITY}"))
}

pub fn ocdm_shapes() -> ShapesGraph {
    shapes(OCDM)
}

pub fn doi_bindings(registry: &ValidatorRegistry) -> Vec<ValidatorBinding> {
    let cond = Condition::new(rdf::TYPE, Term::iri(JOURNAL_ARTICLE));
    vec![
        registry.bind("doi_syntax", RESOURCE_SHAPE, HAS_IDENTIFIER, Some(cond.clone())).unwrap(),
        registry.bind("doi_resolves", RESOURCE_SHAPE, HAS_IDENTIFIER, Some(cond)).unwrap(),
    ]
}

pub fn schema(shapes: &ShapesGraph, bindings: &[ValidatorBinding]) -> FormSchema {
    compile_form(shapes.get(RESOURCE_SHAPE).unwrap(), bindings, &BTreeMap::new()).unwrap()
}
