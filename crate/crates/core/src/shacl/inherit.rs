use std::collections::HashSet;

use super::model::{NodeShape, PropertyShape, ShapesGraph};
use super::ShapeError;

/// Copies inherited property shapes into every node shape.
///
/// Property order: own properties, then each super-shape's (recursively,
/// depth first, in declaration order). A super-shape reachable twice
/// contributes once. Missing super-shapes are skipped with a warning.
pub fn resolve_inheritance(shapes: &ShapesGraph) -> Result<ShapesGraph, ShapeError> {
    let mut resolved = shapes.clone();
    let mut warnings = Vec::new();
    for shape in resolved.shapes.iter_mut() {
        let original = shapes.get(&shape.id).expect("shape ids are unique");
        let mut props = Vec::new();
        let mut stack = Vec::new();
        let mut done = HashSet::new();
        collect(shapes, original, &mut props, &mut stack, &mut done, &mut warnings)?;
        for (i, p) in props.iter_mut().enumerate() {
            p.source_order = i;
        }
        shape.properties = props;
        shape.super_shapes.clear();
    }
    for w in warnings {
        if !resolved.warnings.contains(&w) {
            resolved.warnings.push(w);
        }
    }
    Ok(resolved)
}

fn collect<'a>(
    shapes: &'a ShapesGraph,
    shape: &'a NodeShape,
    props: &mut Vec<PropertyShape>,
    stack: &mut Vec<&'a str>,
    done: &mut HashSet<&'a str>,
    warnings: &mut Vec<String>,
) -> Result<(), ShapeError> {
    stack.push(&shape.id);
    done.insert(&shape.id);
    props.extend(shape.properties.iter().cloned());
    for parent_id in &shape.super_shapes {
        if let Some(pos) = stack.iter().position(|id| *id == parent_id.as_str()) {
            let mut cycle: Vec<String> = stack[pos..].iter().map(|s| s.to_string()).collect();
            cycle.push(parent_id.clone());
            return Err(ShapeError::InheritanceCycle(cycle));
        }
        if done.contains(parent_id.as_str()) {
            continue;
        }
        match shapes.get(parent_id) {
            Some(parent) => collect(shapes, parent, props, stack, done, warnings)?,
            None => warnings.push(format!(
                "<{}>: super-shape <{parent_id}> not found; skipped",
                shape.id
            )),
        }
    }
    stack.pop();
    Ok(())
}
