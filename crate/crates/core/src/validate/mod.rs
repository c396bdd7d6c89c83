//! Phase-1 validation: evaluate a data graph against resolved shapes.
//!
//! Results are ordered by shape id, focus node, property `source_order`,
//! component name, then value. Evaluation never stops at the first
//! violation.
//!
//! `sh:pattern` uses the syntax of the Rust `regex` crate. Shipped shapes
//! stick to character classes, anchors and quantifiers, which behave the
//! same as in XPath/ECMAScript regular expressions.

mod engine;
mod report;

pub use engine::{eval_constraint, select_focus_nodes, validate, validate_with_focus};
pub use report::{Phase, Severity, ValidationReport, ValidationResult, REPORT_VERSION};
