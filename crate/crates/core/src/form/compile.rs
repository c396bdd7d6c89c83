use std::collections::BTreeMap;

use thiserror::Error;

use super::label::derive_label;
use super::schema::{FieldOption, FormField, FormSchema, LiveCheck, MaxOccurs, ValueKind, Widget, SCHEMA_VERSION};
use crate::custom::{Condition, Mode, ValidatorBinding};
use crate::rdf::Term;
use crate::shacl::{Constraint, NodeKind, NodeShape};
use crate::vocab::xsd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("<{0}>: nothing to compile (no property shapes)")]
    NothingToCompile(String),
    #[error("<{0}>: no sh:targetClass")]
    NoTargetClass(String),
}

/// Compiles a resolved node shape and the bindings declared for it.
///
/// One field per property path, in `source_order`. Property shapes that
/// share a path are merged (tightest bounds, intersected option lists).
/// Paths that only appear in bindings become extra fields after the shape's
/// own; they get `visible_when` if every binding on them is conditional on
/// the same condition.
pub fn compile_form(
    shape: &NodeShape,
    bindings: &[ValidatorBinding],
    overrides: &BTreeMap<String, String>,
) -> Result<FormSchema, CompileError> {
    if shape.properties.is_empty() {
        return Err(CompileError::NothingToCompile(shape.id.clone()));
    }
    let target_class = shape
        .target_class
        .clone()
        .ok_or_else(|| CompileError::NoTargetClass(shape.id.clone()))?;

    let mut properties: Vec<_> = shape.properties.iter().collect();
    properties.sort_by_key(|p| p.source_order);
    let mut groups: Vec<(&str, Vec<&Constraint>)> = Vec::new();
    for p in properties {
        match groups.iter_mut().find(|(path, _)| *path == p.path) {
            Some((_, cs)) => cs.extend(&p.constraints),
            None => groups.push((&p.path, p.constraints.iter().collect())),
        }
    }

    let own: Vec<&ValidatorBinding> = bindings.iter().filter(|b| b.shape_id() == shape.id).collect();
    let mut fields: Vec<FormField> = groups
        .iter()
        .map(|(path, constraints)| {
            let bound: Vec<&ValidatorBinding> = own.iter().copied().filter(|b| b.path() == *path).collect();
            property_field(path, constraints, &bound, overrides)
        })
        .collect();

    let mut extra_paths: Vec<&str> = Vec::new();
    for b in &own {
        if !groups.iter().any(|(p, _)| *p == b.path()) && !extra_paths.contains(&b.path()) {
            extra_paths.push(b.path());
        }
    }
    for path in extra_paths {
        let bound: Vec<&ValidatorBinding> = own.iter().copied().filter(|b| b.path() == path).collect();
        let mut field = property_field(path, &[], &bound, overrides);
        field.visible_when = shared_condition(&bound);
        fields.push(field);
    }

    Ok(FormSchema {
        schema_version: SCHEMA_VERSION.to_string(),
        shape_id: shape.id.clone(),
        target_class,
        fields,
    })
}

fn shared_condition(bindings: &[&ValidatorBinding]) -> Option<Condition> {
    let first = bindings.first()?.condition()?;
    bindings
        .iter()
        .all(|b| b.condition() == Some(first))
        .then(|| first.clone())
}

fn property_field(
    path: &str,
    constraints: &[&Constraint],
    bindings: &[&ValidatorBinding],
    overrides: &BTreeMap<String, String>,
) -> FormField {
    let mut min_occurs = 0;
    let mut max_occurs = MaxOccurs::Unbounded;
    let mut options: Option<Vec<&Term>> = None;
    let mut datatype: Option<&str> = None;
    let mut iri_values = false;
    let mut live_checks = Vec::new();

    for c in constraints {
        match c {
            Constraint::MinCount(n) => min_occurs = min_occurs.max(*n),
            Constraint::MaxCount(n) => {
                max_occurs = match max_occurs {
                    MaxOccurs::Bounded(m) => MaxOccurs::Bounded(m.min(*n)),
                    MaxOccurs::Unbounded => MaxOccurs::Bounded(*n),
                }
            }
            Constraint::InList(items) => {
                options = Some(match options {
                    None => items.iter().collect(),
                    Some(prev) => prev.into_iter().filter(|t| items.contains(t)).collect(),
                });
            }
            Constraint::Datatype(dt) => {
                if datatype.is_none() {
                    datatype = Some(dt);
                    live_checks.push(LiveCheck::Datatype(dt.clone()));
                }
            }
            Constraint::Pattern(p) => live_checks.push(LiveCheck::Pattern {
                source: p.source().to_string(),
                flags: p.flags().map(str::to_string),
            }),
            Constraint::ClassOf(_) => iri_values = true,
            Constraint::NodeKind(kind) => {
                iri_values |= matches!(kind, NodeKind::Iri | NodeKind::BlankNodeOrIri);
            }
            Constraint::HasValue(_) => {}
        }
    }

    let options: Option<Vec<FieldOption>> = options.map(|terms| {
        terms
            .into_iter()
            .map(|t| FieldOption {
                value: t.value().to_string(),
                label: derive_label(t.value(), overrides),
                datatype: t.as_literal().map(|l| l.datatype().to_string()),
            })
            .collect()
    });
    if let Some(opts) = &options {
        live_checks.insert(0, LiveCheck::InList(opts.iter().map(|o| o.value.clone()).collect()));
    }

    let mut async_validators = Vec::new();
    for b in bindings {
        match b.mode() {
            Mode::Syntactic => live_checks.push(LiveCheck::Validator(b.validator_name().to_string())),
            Mode::External => async_validators.push(b.validator_name().to_string()),
        }
    }

    let widget = if options.is_some() {
        Widget::Select
    } else if datatype == Some(xsd::ANY_URI) || !async_validators.is_empty() {
        Widget::Url
    } else {
        Widget::Text
    };
    let value_kind = match &options {
        Some(opts) if opts.iter().all(|o| o.datatype.is_none()) => ValueKind::Iri,
        Some(_) => ValueKind::Literal,
        None if datatype.is_none() && iri_values => ValueKind::Iri,
        None => ValueKind::Literal,
    };

    FormField {
        path: path.to_string(),
        label: derive_label(path, overrides),
        widget,
        required: min_occurs >= 1,
        min_occurs,
        max_occurs,
        options,
        datatype: datatype.map(str::to_string),
        value_kind,
        live_checks,
        async_validators,
        visible_when: None,
    }
}
