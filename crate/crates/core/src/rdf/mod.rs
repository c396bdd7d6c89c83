//! RDF data model, Turtle I/O, collections and lexical checks.

mod graph;
mod lexical;
mod list;
mod term;
pub mod turtle;

use thiserror::Error;

pub use graph::Graph;
pub use lexical::{is_supported_datatype, validate_lexical, LexicalCheck, SUPPORTED_DATATYPES};
pub use list::read_list;
pub use term::{Literal, Term, TermKind, Triple};
pub use turtle::{parse_turtle, serialize_turtle, TurtleError, TurtleErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("literal {0} cannot be a subject")]
    LiteralSubject(String),
    #[error("predicate {0} is not an IRI")]
    NonIriPredicate(String),
    #[error("malformed list: {0}")]
    MalformedList(String),
}
