use thiserror::Error;

use super::materialize::is_absolute_iri;
use crate::rdf::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpdateError {
    #[error("nothing to insert: the graph is empty")]
    EmptyGraph,
    #[error("target graph {0:?} is not an absolute IRI")]
    BadGraphIri(String),
}

/// `INSERT DATA { ... }` with one N-Triples line per triple, in sorted
/// order, optionally wrapped in `GRAPH <target> { ... }`.
pub fn build_update(graph: &Graph, target_graph: Option<&str>) -> Result<String, UpdateError> {
    if graph.is_empty() {
        return Err(UpdateError::EmptyGraph);
    }
    let mut out = String::from("INSERT DATA {\n");
    let indent = match target_graph {
        Some(g) if !is_absolute_iri(g) => return Err(UpdateError::BadGraphIri(g.to_string())),
        Some(g) => {
            out.push_str(&format!("  GRAPH <{g}> {{\n"));
            "    "
        }
        None => "  ",
    };
    for t in graph.iter() {
        out.push_str(indent);
        out.push_str(&t.to_string());
        out.push('\n');
    }
    if target_graph.is_some() {
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    Ok(out)
}

/// The triple block of an update produced by [`build_update`].
pub fn update_body(update: &str) -> Option<&str> {
    let rest = update.trim().strip_prefix("INSERT DATA")?.trim_start().strip_prefix('{')?;
    let rest = rest.trim_end().strip_suffix('}')?;
    let trimmed = rest.trim_start();
    match trimmed.strip_prefix("GRAPH") {
        Some(g) => {
            let open = g.find('{')?;
            g[open + 1..].trim_end().strip_suffix('}')
        }
        None => Some(rest),
    }
}
