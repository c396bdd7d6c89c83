//! Shape-driven data entry for RDF knowledge graphs.
//!
//! A SHACL shapes graph is compiled into a form schema; submissions are
//! materialized into RDF, checked against the shapes (phase 1) and then by
//! custom validators (phase 2), and accepted entities are delivered as a
//! SPARQL Update.

pub mod custom;
pub mod form;
pub mod rdf;
pub mod shacl;
pub mod submission;
pub mod validate;
pub mod vocab;
