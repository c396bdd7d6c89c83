//! Random graphs, shapes, data and payloads.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use regex::Regex;
use shaclform::custom::eval_condition;
use shaclform::form::{FormField, FormSchema, LiveCheck, MaxOccurs, ValueKind};
use shaclform::rdf::{Graph, Term, Triple};
use shaclform::shacl::{Constraint, NodeKind, NodeShape, Pattern, PropertyShape, ShapesGraph};
use shaclform::submission::SubmissionPayload;

const EX: &str = "http://example.org/";
const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

fn ex(local: &str) -> Term {
    Term::iri(format!("{EX}{local}"))
}

fn xsd(local: &str) -> String {
    format!("{XSD}{local}")
}

fn random_text<R: Rng>(rng: &mut R, max_len: usize) -> String {
    const ALPHABET: &[&str] = &[
        "a", "b", "Z", "0", "7", " ", "-", "_", ".", "\"", "\\", "\n", "\t", "'", "#", "é", "ß", "中", "🙂", "{", "}",
    ];
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
}

/// A graph with at most `max_triples` triples and at most 12 blank nodes,
/// mixing IRIs needing escapes or not, plain, language-tagged and typed
/// literals, and occasional prefix declarations.
pub fn random_graph<R: Rng>(rng: &mut R, max_triples: usize) -> Graph {
    let blank_count = rng.random_range(0..=12);
    let iri_locals = ["s0", "s1", "a#frag", "path/x-y_z.1", "p0", "p1", "C", "%20x"];
    let subject = |rng: &mut R| -> Term {
        if blank_count > 0 && rng.random_bool(0.4) {
            Term::blank(format!("n{}", rng.random_range(0..blank_count)))
        } else {
            ex(iri_locals.choose(rng).unwrap())
        }
    };
    let mut g = Graph::new();
    if rng.random_bool(0.5) {
        g.set_prefix("ex", EX);
    }
    if rng.random_bool(0.3) {
        g.set_prefix("xsd", XSD);
    }
    let n = rng.random_range(0..=max_triples);
    for _ in 0..n {
        let s = subject(rng);
        let p = if rng.random_bool(0.2) {
            Term::iri(RDF_TYPE)
        } else {
            ex(["p0", "p1", "p2", "q/r"].choose(rng).unwrap())
        };
        let o = match rng.random_range(0..7) {
            0 | 1 => subject(rng),
            2 => Term::literal(random_text(rng, 6)),
            3 => Term::lang(random_text(rng, 4), ["en", "en-GB", "it"].choose(rng).unwrap()),
            4 => Term::typed(rng.random_range(-50..50).to_string(), xsd("integer")),
            5 => Term::typed(random_text(rng, 3), xsd(["string", "date", "boolean"].choose(rng).unwrap())),
            _ => Term::typed(random_text(rng, 3), format!("{EX}dt")),
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}

/// Term pool shared by data values and constraint arguments.
fn value_pool() -> Vec<Term> {
    vec![
        ex("n0"),
        ex("n1"),
        ex("v0"),
        ex("v1"),
        Term::blank("x0"),
        Term::literal("a1"),
        Term::literal("B"),
        Term::literal("12"),
        Term::literal("x"),
        Term::lang("a", "en"),
        Term::typed("7", xsd("integer")),
        Term::typed("-3", xsd("integer")),
        Term::typed("7.5", xsd("integer")),
        Term::typed("true", xsd("boolean")),
        Term::typed("yes", xsd("boolean")),
    ]
}

fn random_constraint<R: Rng>(rng: &mut R, pool: &[Term]) -> Constraint {
    match rng.random_range(0..8) {
        0 => Constraint::MinCount(rng.random_range(0..=3)),
        1 => Constraint::MaxCount(rng.random_range(0..=3)),
        2 => {
            let n = rng.random_range(1..=3);
            Constraint::InList(pool.choose_multiple(rng, n).cloned().collect())
        }
        3 => Constraint::Datatype(xsd(["string", "integer", "boolean"].choose(rng).unwrap())),
        4 => Constraint::ClassOf(format!("{EX}{}", ["C0", "C1"].choose(rng).unwrap())),
        5 => Constraint::NodeKind(
            *[
                NodeKind::Iri,
                NodeKind::BlankNode,
                NodeKind::Literal,
                NodeKind::BlankNodeOrIri,
                NodeKind::BlankNodeOrLiteral,
                NodeKind::IriOrLiteral,
            ]
            .choose(rng)
            .unwrap(),
        ),
        6 => {
            let (source, flags) = *[("^a", None), ("b$", Some("i")), ("^[0-9]+$", None), ("x", None), ("^n", None)]
                .choose(rng)
                .unwrap();
            Constraint::Pattern(Pattern::new(source, flags).unwrap())
        }
        _ => Constraint::HasValue(pool.choose(rng).unwrap().clone()),
    }
}

/// Up to two node shapes targeting ex:C0/ex:C1 with at most 3 property
/// shapes and at most 3 constraints each (count arguments at most 3), plus
/// data with at most 4 focus candidates.
pub fn random_instance<R: Rng>(rng: &mut R) -> (Graph, ShapesGraph) {
    let pool = value_pool();
    let paths = [format!("{EX}p0"), format!("{EX}p1"), format!("{EX}p2"), RDF_TYPE.to_string()];
    let shape_count = rng.random_range(1..=2);
    let shapes: Vec<NodeShape> = (0..shape_count)
        .map(|i| {
            let props = rng.random_range(0..=3);
            NodeShape {
                id: format!("{EX}S{i}"),
                target_class: Some(format!("{EX}{}", ["C0", "C1"].choose(rng).unwrap())),
                super_shapes: vec![],
                properties: (0..props)
                    .map(|k| PropertyShape {
                        path: paths.choose(rng).unwrap().clone(),
                        constraints: (0..rng.random_range(1..=3)).map(|_| random_constraint(rng, &pool)).collect(),
                        source_order: k,
                    })
                    .collect(),
            }
        })
        .collect();

    let mut data = Graph::new();
    let nodes = [ex("n0"), ex("n1"), Term::blank("x0"), ex("v0")];
    let focus_count = rng.random_range(0..=4);
    for node in &nodes[..focus_count] {
        for class in ["C0", "C1"] {
            if rng.random_bool(0.5) {
                data.insert(Triple::new(node.clone(), Term::iri(RDF_TYPE), ex(class)).unwrap());
            }
        }
        for path in &paths[..3] {
            for _ in 0..rng.random_range(0..=3) {
                let v = pool.choose(rng).unwrap().clone();
                data.insert(Triple::new(node.clone(), Term::iri(path.as_str()), v).unwrap());
            }
        }
    }
    (data, ShapesGraph::new(shapes))
}

fn literal_for<R: Rng>(rng: &mut R, field: &FormField, serial: usize) -> String {
    let datatype = field.datatype.as_deref().and_then(|d| d.strip_prefix(XSD));
    match (datatype, field.value_kind) {
        (_, ValueKind::Iri) => format!("{EX}r{serial}-{}", rng.random_range(0..1000)),
        (Some("integer"), _) => format!("{}{serial}", rng.random_range(-999..999)),
        (Some("decimal"), _) => format!("{serial}.{}", rng.random_range(0..99)),
        (Some("boolean"), _) => ["true", "false", "1", "0"][serial % 4].to_string(),
        (Some("date"), _) => format!("20{:02}-{:02}-{:02}", serial % 100, rng.random_range(1..=12), rng.random_range(1..=28)),
        (Some("anyURI"), _) => format!("https://example.org/doc/{serial}"),
        _ if field.live_checks.iter().any(|c| matches!(c, LiveCheck::Pattern { .. })) => {
            format!("{:04}-{:03}{}", rng.random_range(0..10000), rng.random_range(0..1000), rng.random_range(0..10))
        }
        _ if !field.async_validators.is_empty() => {
            format!("10.{}/x.{serial}.{}", rng.random_range(1000..99999), rng.random_range(0..1000))
        }
        _ => format!("{}{serial}", random_text(rng, 12)),
    }
}

fn satisfies_patterns(field: &FormField, value: &str) -> bool {
    field.live_checks.iter().all(|c| match c {
        LiveCheck::Pattern { source, flags } => {
            let src = match flags {
                Some(f) => format!("(?{f}){source}"),
                None => source.clone(),
            };
            Regex::new(&src).unwrap().is_match(value)
        }
        _ => true,
    })
}

fn distinct_values<R: Rng>(rng: &mut R, field: &FormField, n: usize) -> Vec<String> {
    if let Some(options) = &field.options {
        let mut values: Vec<String> = options.iter().map(|o| o.value.clone()).collect();
        values.shuffle(rng);
        values.truncate(n);
        return values;
    }
    let mut values = Vec::new();
    let mut serial = 0;
    while values.len() < n {
        serial += 1;
        assert!(serial < 10_000, "cannot generate values for {}", field.path);
        let v = literal_for(rng, field, serial);
        if !values.contains(&v) && satisfies_patterns(field, &v) {
            values.push(v);
        }
    }
    values
}

fn visible(field: &FormField, payload: &SubmissionPayload) -> bool {
    field.visible_when.as_ref().is_none_or(|c| eval_condition(c, payload))
}

/// A payload honouring the schema's occurs bounds, option lists, datatypes
/// and patterns. Hidden conditional fields get no values.
pub fn conforming_payload<R: Rng>(rng: &mut R, schema: &FormSchema) -> SubmissionPayload {
    let mut payload = SubmissionPayload::new(schema.shape_id.clone());
    for field in &schema.fields {
        if !visible(field, &payload) {
            continue;
        }
        let cap = match field.max_occurs {
            MaxOccurs::Bounded(m) => m,
            MaxOccurs::Unbounded => field.min_occurs + 2,
        };
        let cap = field.options.as_ref().map_or(cap, |o| cap.min(o.len() as u64));
        let n = rng.random_range(field.min_occurs..=cap.max(field.min_occurs)) as usize;
        if n > 0 {
            payload = payload.with(&field.path, distinct_values(rng, field, n));
        }
    }
    payload
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Remove every value of a required field.
    DropRequired(String),
    /// One more distinct value than max_occurs allows.
    ExceedMax(String),
    /// Replace a value of a select field with an IRI outside its options.
    OutsideOptions(String),
    /// A value that is not a lexical form of the field's datatype.
    BadLexical(String),
}

/// Breaks exactly one schema rule of a conforming payload.
pub fn mutate<R: Rng>(
    rng: &mut R,
    schema: &FormSchema,
    payload: &SubmissionPayload,
) -> Option<(SubmissionPayload, Mutation)> {
    let mut candidates = Vec::new();
    for field in &schema.fields {
        let present = !payload.values_at(&field.path).is_empty();
        if field.min_occurs >= 1 && present {
            candidates.push(Mutation::DropRequired(field.path.clone()));
        }
        if let MaxOccurs::Bounded(max) = field.max_occurs {
            let enough = field.options.as_ref().is_none_or(|o| o.len() as u64 > max);
            if enough && visible(field, payload) {
                candidates.push(Mutation::ExceedMax(field.path.clone()));
            }
        }
        if field.options.is_some() && present {
            candidates.push(Mutation::OutsideOptions(field.path.clone()));
        }
        let bad_lexical = field.datatype.as_deref().is_some_and(|d| {
            ["integer", "decimal", "boolean", "date"].iter().any(|t| d == xsd(t))
        });
        if bad_lexical && field.options.is_none() {
            candidates.push(Mutation::BadLexical(field.path.clone()));
        }
    }
    let mutation = candidates.choose(rng)?.clone();
    let mut values: BTreeMap<String, Vec<String>> = payload.values.clone();
    match &mutation {
        Mutation::DropRequired(path) => {
            values.remove(path);
        }
        Mutation::ExceedMax(path) => {
            let field = schema.field(path).unwrap();
            let MaxOccurs::Bounded(max) = field.max_occurs else { unreachable!() };
            values.insert(path.clone(), distinct_values(rng, field, max as usize + 1));
        }
        Mutation::OutsideOptions(path) => {
            let list = values.get_mut(path).unwrap();
            let i = rng.random_range(0..list.len());
            list[i] = format!("{EX}not-an-option");
        }
        Mutation::BadLexical(path) => {
            values.entry(path.clone()).or_default().push("not a lexical form".to_string());
            let field = schema.field(path).unwrap();
            if let MaxOccurs::Bounded(max) = field.max_occurs {
                let list = values.get_mut(path).unwrap();
                while list.len() as u64 > max.max(1) {
                    list.remove(0);
                }
            }
        }
    }
    let mutated = SubmissionPayload {
        shape_id: payload.shape_id.clone(),
        values,
    };
    Some((mutated, mutation))
}
