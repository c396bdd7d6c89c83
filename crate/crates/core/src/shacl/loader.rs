use crate::rdf::{is_supported_datatype, read_list, validate_lexical, Graph, LexicalCheck, Term, Triple};
use crate::vocab::{rdf, rdfs, sh, xsd};

use super::model::{Constraint, NodeKind, NodeShape, Pattern, PropertyShape, ShapesGraph};
use super::ShapeError;

// Non-validating shape metadata; accepted silently.
const IGNORED_PARAMETERS: [&str; 7] = [
    rdf::TYPE,
    sh::NAME,
    sh::DESCRIPTION,
    sh::ORDER,
    sh::GROUP,
    sh::MESSAGE,
    sh::FLAGS,
];

/// Interprets every `sh:NodeShape` in `graph`. Inheritance is left
/// unresolved; unsupported vocabulary is reported in
/// [`ShapesGraph::warnings`].
pub fn load_shapes(graph: &Graph) -> Result<ShapesGraph, ShapeError> {
    let mut warnings = Vec::new();
    let mut shapes = Vec::new();
    let type_pred = Term::iri(rdf::TYPE);
    for subject in graph.subjects(&type_pred, &Term::iri(sh::NODE_SHAPE)) {
        let Term::Iri(id) = subject else {
            return Err(ShapeError::AnonymousNodeShape(subject.to_string()));
        };
        shapes.push(load_node_shape(graph, id, &mut warnings)?);
    }
    let mut sg = ShapesGraph::new(shapes);
    sg.prefixes = graph.prefixes().clone();
    sg.warnings = warnings;
    Ok(sg)
}

/// Outgoing triples of `subject` in document order.
fn outgoing<'a>(graph: &'a Graph, subject: &Term) -> Vec<&'a Triple> {
    let mut triples = graph.match_triples(Some(subject), None, None);
    triples.sort_by_key(|t| graph.position(t));
    triples
}

fn load_node_shape(graph: &Graph, id: &str, warnings: &mut Vec<String>) -> Result<NodeShape, ShapeError> {
    let subject = Term::iri(id);
    let mut targets = Vec::new();
    let mut super_shapes = Vec::new();
    let mut property_nodes = Vec::new();

    for t in outgoing(graph, &subject) {
        let predicate = t.predicate().as_iri().unwrap_or_default();
        match predicate {
            sh::TARGET_CLASS => targets.push(expect_iri(id, predicate, t.object())?),
            rdfs::SUB_CLASS_OF => super_shapes.push(expect_iri(id, predicate, t.object())?),
            sh::PROPERTY => property_nodes.push(t.object().clone()),
            p if IGNORED_PARAMETERS.contains(&p) => {}
            p if p.starts_with(sh::NS) => {
                warnings.push(format!("<{id}>: unsupported shape parameter <{p}> ignored"));
            }
            p => warnings.push(format!("<{id}>: unrecognised predicate <{p}> ignored")),
        }
    }

    targets.sort();
    targets.dedup();
    if targets.len() > 1 {
        warnings.push(format!(
            "<{id}>: {} target classes declared; only <{}> is used",
            targets.len(),
            targets[0]
        ));
    }

    let mut properties = Vec::with_capacity(property_nodes.len());
    for (order, node) in property_nodes.iter().enumerate() {
        properties.push(load_property_shape(graph, id, node, order, warnings)?);
    }

    Ok(NodeShape {
        id: id.to_string(),
        target_class: targets.into_iter().next(),
        super_shapes,
        properties,
    })
}

fn load_property_shape(
    graph: &Graph,
    shape_id: &str,
    node: &Term,
    source_order: usize,
    warnings: &mut Vec<String>,
) -> Result<PropertyShape, ShapeError> {
    if node.is_literal() {
        return Err(ShapeError::ExpectedIri {
            shape: shape_id.to_string(),
            predicate: sh::PROPERTY.to_string(),
            found: node.to_string(),
        });
    }
    let triples = outgoing(graph, node);
    let paths: Vec<&Term> = triples
        .iter()
        .filter(|t| t.predicate().as_iri() == Some(sh::PATH))
        .map(|t| t.object())
        .collect();
    let path = match paths.as_slice() {
        [] => return Err(ShapeError::MissingPath(shape_id.to_string())),
        [Term::Iri(p)] => p.clone(),
        [other] => {
            return Err(ShapeError::UnsupportedPath {
                shape: shape_id.to_string(),
                path: other.to_string(),
            })
        }
        _ => {
            return Err(ShapeError::UnsupportedPath {
                shape: shape_id.to_string(),
                path: "several sh:path values".to_string(),
            })
        }
    };
    let flags = triples
        .iter()
        .find(|t| t.predicate().as_iri() == Some(sh::FLAGS))
        .map(|t| t.object().value().to_string());

    let mut constraints = Vec::new();
    for t in &triples {
        let predicate = t.predicate().as_iri().unwrap_or_default();
        let object = t.object();
        let constraint = match predicate {
            sh::MIN_COUNT => Constraint::MinCount(expect_count((shape_id, path.as_str(), predicate), object)?),
            sh::MAX_COUNT => Constraint::MaxCount(expect_count((shape_id, path.as_str(), predicate), object)?),
            sh::MIN_VALUE => {
                warnings.push(format!(
                    "<{shape_id}> path <{path}>: nonstandard sh:minValue read as sh:minCount"
                ));
                Constraint::MinCount(expect_count((shape_id, path.as_str(), predicate), object)?)
            }
            sh::MAX_VALUE => {
                warnings.push(format!(
                    "<{shape_id}> path <{path}>: nonstandard sh:maxValue read as sh:maxCount"
                ));
                Constraint::MaxCount(expect_count((shape_id, path.as_str(), predicate), object)?)
            }
            sh::IN => {
                let items = read_list(graph, object).map_err(|e| ShapeError::MalformedList {
                    shape: shape_id.to_string(),
                    path: path.clone(),
                    source: e,
                })?;
                if items.is_empty() {
                    return Err(ShapeError::EmptyInList {
                        shape: shape_id.to_string(),
                        path,
                    });
                }
                Constraint::InList(items)
            }
            sh::DATATYPE => {
                let dt = expect_iri(shape_id, predicate, object)?;
                if !is_supported_datatype(&dt) {
                    warnings.push(format!(
                        "<{shape_id}> path <{path}>: datatype <{dt}> is not lexically checked"
                    ));
                }
                Constraint::Datatype(dt)
            }
            sh::CLASS => Constraint::ClassOf(expect_iri(shape_id, predicate, object)?),
            sh::NODE_KIND => {
                let iri = expect_iri(shape_id, predicate, object)?;
                let kind = NodeKind::from_iri(&iri).ok_or_else(|| ShapeError::ExpectedIri {
                    shape: shape_id.to_string(),
                    predicate: predicate.to_string(),
                    found: format!("<{iri}> (not a node kind)"),
                })?;
                Constraint::NodeKind(kind)
            }
            sh::PATTERN => {
                let Term::Literal(source) = object else {
                    return Err(ShapeError::ExpectedLiteral {
                        shape: shape_id.to_string(),
                        predicate: predicate.to_string(),
                        found: object.to_string(),
                    });
                };
                let pattern = Pattern::new(source.lexical(), flags.as_deref()).map_err(|e| {
                    ShapeError::InvalidPattern {
                        shape: shape_id.to_string(),
                        pattern: source.lexical().to_string(),
                        reason: e.to_string(),
                    }
                })?;
                Constraint::Pattern(pattern)
            }
            sh::HAS_VALUE => Constraint::HasValue(object.clone()),
            sh::PATH => continue,
            p if IGNORED_PARAMETERS.contains(&p) => continue,
            p => {
                warnings.push(format!(
                    "<{shape_id}> path <{path}>: unsupported constraint <{p}> ignored"
                ));
                continue;
            }
        };
        constraints.push(constraint);
    }

    Ok(PropertyShape {
        path,
        constraints,
        source_order,
    })
}

fn expect_iri(shape: &str, predicate: &str, object: &Term) -> Result<String, ShapeError> {
    match object {
        Term::Iri(iri) => Ok(iri.clone()),
        other => Err(ShapeError::ExpectedIri {
            shape: shape.to_string(),
            predicate: predicate.to_string(),
            found: other.to_string(),
        }),
    }
}

fn expect_count((shape, path, predicate): (&str, &str, &str), object: &Term) -> Result<u64, ShapeError> {
    let err = || ShapeError::ExpectedInteger {
        shape: shape.to_string(),
        path: path.to_string(),
        predicate: predicate.to_string(),
        found: object.to_string(),
    };
    let Term::Literal(lit) = object else {
        return Err(err());
    };
    if validate_lexical(lit.lexical(), xsd::INTEGER) != LexicalCheck::Valid {
        return Err(err());
    }
    lit.lexical().trim_start_matches('+').parse::<u64>().map_err(|_| err())
}
