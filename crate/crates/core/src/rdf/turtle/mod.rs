//! Turtle reader and writer for the subset used by shapes graphs and
//! produced data.

mod parser;
mod writer;

use thiserror::Error;

pub use parser::parse_turtle;
pub use writer::serialize_turtle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown prefix '{0}:'")]
    UnknownPrefix(String),
    #[error("relative IRI <{0}> with no base")]
    RelativeIri(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct TurtleError {
    pub kind: TurtleErrorKind,
    pub line: usize,
    pub column: usize,
}
