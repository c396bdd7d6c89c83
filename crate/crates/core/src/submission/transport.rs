use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Mutex;

use super::update::update_body;
use crate::rdf::{parse_turtle, serialize_turtle, Graph};

pub const SPARQL_UPDATE_CONTENT_TYPE: &str = "application/sparql-update";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HttpReply {
    pub status: u16,
    pub body: String,
}

/// Delivers an update document. `Err` carries a connection-level cause.
pub trait UpdateTransport: Send + Sync {
    fn post_update(&self, endpoint: &str, update: &str) -> Result<HttpReply, String>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmitOutcome {
    Ok,
    Failed { status: Option<u16>, body: String },
}

/// One POST attempt; 2xx is success. There are no retries.
pub fn submit(endpoint: &str, update: &str, transport: &dyn UpdateTransport) -> SubmitOutcome {
    match transport.post_update(endpoint, update) {
        Ok(reply) if (200..300).contains(&reply.status) => SubmitOutcome::Ok,
        Ok(reply) => SubmitOutcome::Failed {
            status: Some(reply.status),
            body: reply.body,
        },
        Err(cause) => SubmitOutcome::Failed {
            status: None,
            body: cause,
        },
    }
}

/// Turtle rendering of the triples inside an update.
pub fn dry_run_turtle(update: &str, prefixes: &BTreeMap<String, String>) -> Result<String, String> {
    let body = update_body(update).ok_or("not an INSERT DATA update")?;
    let mut graph: Graph = parse_turtle(body, None).map_err(|e| e.to_string())?;
    for (p, ns) in prefixes {
        graph.set_prefix(p.clone(), ns.clone());
    }
    Ok(serialize_turtle(&graph))
}

/// Writes the Turtle an update would insert instead of contacting an
/// endpoint.
pub struct DryRunTransport<W: Write + Send> {
    out: Mutex<W>,
    prefixes: BTreeMap<String, String>,
}

impl<W: Write + Send> DryRunTransport<W> {
    pub fn new(out: W) -> Self {
        DryRunTransport {
            out: Mutex::new(out),
            prefixes: BTreeMap::new(),
        }
    }

    pub fn with_prefixes(mut self, prefixes: BTreeMap<String, String>) -> Self {
        self.prefixes = prefixes;
        self
    }

    pub fn into_inner(self) -> W {
        self.out.into_inner().unwrap_or_else(|e| e.into_inner())
    }
}

impl<W: Write + Send> UpdateTransport for DryRunTransport<W> {
    fn post_update(&self, _endpoint: &str, update: &str) -> Result<HttpReply, String> {
        let turtle = dry_run_turtle(update, &self.prefixes)?;
        let mut out = self.out.lock().unwrap_or_else(|e| e.into_inner());
        out.write_all(turtle.as_bytes()).map_err(|e| e.to_string())?;
        out.flush().map_err(|e| e.to_string())?;
        Ok(HttpReply {
            status: 200,
            body: String::new(),
        })
    }
}
