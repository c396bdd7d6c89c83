use std::collections::BTreeSet;

use crate::rdf::{validate_lexical, Graph, Term};
use crate::shacl::{Constraint, NodeShape, ShapesGraph};
use crate::vocab::rdf;

use super::report::{ValidationReport, ValidationResult};

/// Subjects of `(s, rdf:type, target_class)`, sorted. Types are matched
/// directly; no class hierarchy is inferred over the data.
pub fn select_focus_nodes(data: &Graph, shape: &NodeShape) -> Vec<Term> {
    let Some(class) = &shape.target_class else {
        return Vec::new();
    };
    data.subjects(&Term::iri(rdf::TYPE), &Term::iri(class.as_str()))
        .into_iter()
        .cloned()
        .collect()
}

/// Evaluates one constraint against the values reached from `focus`
/// through `path`.
pub fn eval_constraint(
    constraint: &Constraint,
    focus: &Term,
    path: &str,
    values: &[Term],
    data: &Graph,
) -> Vec<ValidationResult> {
    let kind = constraint.component();
    let result = |value: Option<&Term>, message: String| {
        ValidationResult::shacl(kind, focus, Some(path), value.cloned(), message)
    };
    match constraint {
        Constraint::MinCount(min) => {
            if (values.len() as u64) < *min {
                vec![result(
                    None,
                    format!("expected at least {min} value(s) for <{path}>, found {}", values.len()),
                )]
            } else {
                vec![]
            }
        }
        Constraint::MaxCount(max) => {
            if (values.len() as u64) > *max {
                vec![result(
                    None,
                    format!("expected at most {max} value(s) for <{path}>, found {}", values.len()),
                )]
            } else {
                vec![]
            }
        }
        Constraint::InList(allowed) => values
            .iter()
            .filter(|v| !allowed.contains(v))
            .map(|v| result(Some(v), format!("{v} is not one of the allowed values")))
            .collect(),
        Constraint::Datatype(datatype) => values
            .iter()
            .filter_map(|v| {
                let problem = match v {
                    Term::Literal(lit) if lit.datatype() != datatype => {
                        format!("{v} has datatype <{}>, expected <{datatype}>", lit.datatype())
                    }
                    Term::Literal(lit) if !validate_lexical(lit.lexical(), datatype).passes() => {
                        format!("{v} is not a valid lexical form of <{datatype}>")
                    }
                    Term::Literal(_) => return None,
                    _ => format!("{v} is not a literal of datatype <{datatype}>"),
                };
                Some(result(Some(v), problem))
            })
            .collect(),
        Constraint::ClassOf(class) => {
            let type_pred = Term::iri(rdf::TYPE);
            let class_term = Term::iri(class.as_str());
            values
                .iter()
                .filter(|v| v.is_literal() || data.match_triples(Some(v), Some(&type_pred), Some(&class_term)).is_empty())
                .map(|v| result(Some(v), format!("{v} is not an instance of <{class}>")))
                .collect()
        }
        Constraint::NodeKind(node_kind) => values
            .iter()
            .filter(|v| !node_kind.accepts(v))
            .map(|v| result(Some(v), format!("{v} does not have node kind <{}>", node_kind.iri())))
            .collect(),
        Constraint::Pattern(pattern) => values
            .iter()
            .filter(|v| v.is_blank() || !pattern.is_match(v.value()))
            .map(|v| result(Some(v), format!("{v} does not match pattern {:?}", pattern.source())))
            .collect(),
        Constraint::HasValue(expected) => {
            if values.contains(expected) {
                vec![]
            } else {
                vec![result(None, format!("missing required value {expected} for <{path}>"))]
            }
        }
    }
}

/// Phase-1 validation of `data` against every shape's target nodes.
pub fn validate(data: &Graph, shapes: &ShapesGraph) -> ValidationReport {
    validate_with_focus(data, shapes, &[])
}

/// Like [`validate`], with extra focus nodes per shape id on top of the
/// class-targeted ones (used to check a freshly produced entity against
/// the shape its form was compiled from).
pub fn validate_with_focus(data: &Graph, shapes: &ShapesGraph, extra: &[(&str, Term)]) -> ValidationReport {
    let mut results = Vec::new();
    for shape in shapes.shapes() {
        let mut focus: BTreeSet<Term> = select_focus_nodes(data, shape).into_iter().collect();
        focus.extend(
            extra
                .iter()
                .filter(|(id, _)| *id == shape.id)
                .map(|(_, node)| node.clone()),
        );
        let mut properties: Vec<_> = shape.properties.iter().collect();
        properties.sort_by_key(|p| p.source_order);
        for node in &focus {
            for property in &properties {
                let predicate = Term::iri(property.path.as_str());
                let values: Vec<Term> = data.objects(node, &predicate).cloned().collect();
                let mut constraints: Vec<&Constraint> = property.constraints.iter().collect();
                constraints.sort_by_key(|c| c.component().name());
                for c in constraints {
                    results.extend(eval_constraint(c, node, &property.path, &values, data));
                }
            }
        }
    }
    ValidationReport::from_results(results)
}
