//! Request handling independent of the HTTP layer.
//!
//! Every handler returns an [`ApiResponse`]: a status code and a JSON body.
//! Error bodies are `{"error": <kind>, "message": <text>}`.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use shaclform::custom::{MockProbe, Phase2Context, ResolverProbe, ValidatorBinding, ValidatorRegistry};
use shaclform::form::{compile_form, derive_label, serialize_form_schema, FormSchema};
use shaclform::rdf::{serialize_turtle, Graph};
use shaclform::shacl::ShapesGraph;
use shaclform::submission::{
    build_update, check_payload, process_submission, submit, Minter, SubmissionOutcome, SubmissionPayload,
    SubmitOutcome, UpdateTransport,
};
use shaclform::validate::ValidationReport;

use crate::config::{ConfigError, ProbeConfig, ServiceConfig};
use crate::live::{HttpProbe, HttpTransport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApiResponse {
    pub status: u16,
    pub body: String,
}

impl ApiResponse {
    fn json(status: u16, body: &impl Serialize) -> Self {
        ApiResponse {
            status,
            body: serde_json::to_string(body).expect("response documents serialize"),
        }
    }

    fn error(status: u16, kind: &str, message: impl Into<String>) -> Self {
        Self::json(status, &json!({ "error": kind, "message": message.into() }))
    }
}

/// Where accepted updates go.
#[derive(Clone)]
pub enum Delivery {
    Endpoint {
        url: String,
        transport: Arc<dyn UpdateTransport>,
    },
    /// Nothing is sent; the Turtle is only returned to the caller.
    DryRun,
}

/// An accepted submission.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Acceptance {
    pub subject: String,
    pub turtle: String,
    pub update: String,
    /// False for a dry run.
    pub submitted: bool,
    #[serde(serialize_with = "report_value")]
    pub report: ValidationReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmitReply {
    Accepted(Acceptance),
    Rejected(ValidationReport),
    /// Accepted, but the endpoint did not take the update.
    DeliveryFailed {
        acceptance: Acceptance,
        status: Option<u16>,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApiError {
    NotFound(String),
    Internal(String),
}

impl ApiError {
    fn response(&self) -> ApiResponse {
        match self {
            ApiError::NotFound(m) => ApiResponse::error(404, "not_found", m.as_str()),
            ApiError::Internal(m) => ApiResponse::error(500, "internal", m.as_str()),
        }
    }
}

struct CompiledForm {
    schema: FormSchema,
    document: String,
}

/// Shared, immutable service state.
pub struct App {
    shapes: ShapesGraph,
    registry: ValidatorRegistry,
    bindings: Vec<ValidatorBinding>,
    forms: BTreeMap<String, CompiledForm>,
    listing: String,
    minter: Minter,
    probe: Arc<dyn ResolverProbe>,
    delivery: Delivery,
    target_graph: Option<String>,
}

impl App {
    /// Compiles every form up front, so a shape that cannot become a form
    /// stops startup.
    pub fn new(config: &ServiceConfig, registry: ValidatorRegistry) -> Result<Self, ConfigError> {
        let mut forms = BTreeMap::new();
        let mut entries = Vec::new();
        for shape in config.shapes.shapes() {
            let Some(class) = &shape.target_class else { continue };
            let schema = compile_form(shape, &config.bindings, &config.label_overrides).map_err(|e| ConfigError::Form {
                shape: shape.id.clone(),
                message: e.to_string(),
            })?;
            entries.push(json!({
                "shapeId": shape.id,
                "targetClass": class,
                "label": derive_label(class, &config.label_overrides),
            }));
            let document = serialize_form_schema(&schema);
            forms.insert(shape.id.clone(), CompiledForm { schema, document });
        }
        let listing = serde_json::to_string(&json!({ "forms": entries })).expect("listing serializes");

        let probe: Arc<dyn ResolverProbe> = match &config.probe {
            ProbeConfig::Live => Arc::new(HttpProbe::default()),
            ProbeConfig::Mock { fixtures_path } => {
                let text = fs::read_to_string(fixtures_path)
                    .map_err(|e| ConfigError::Probe(format!("{}: {e}", fixtures_path.display())))?;
                let mock = MockProbe::from_json(&text)
                    .map_err(|e| ConfigError::Probe(format!("{}: {e}", fixtures_path.display())))?;
                Arc::new(mock)
            }
        };
        let delivery = match &config.endpoint_url {
            Some(url) => Delivery::Endpoint {
                url: url.clone(),
                transport: Arc::new(HttpTransport::default()),
            },
            None => Delivery::DryRun,
        };

        Ok(App {
            shapes: config.shapes.clone(),
            registry,
            bindings: config.bindings.clone(),
            forms,
            listing,
            minter: Minter::new(&config.minting)?,
            probe,
            delivery,
            target_graph: config.target_graph.clone(),
        })
    }

    pub fn with_probe(mut self, probe: Arc<dyn ResolverProbe>) -> Self {
        self.probe = probe;
        self
    }

    pub fn with_delivery(mut self, delivery: Delivery) -> Self {
        self.delivery = delivery;
        self
    }

    pub fn shapes(&self) -> &ShapesGraph {
        &self.shapes
    }

    pub fn form(&self, shape_id: &str) -> Option<&FormSchema> {
        self.forms.get(shape_id).map(|f| &f.schema)
    }

    /// The serialized form schema, byte-identical for the process lifetime.
    pub fn form_document(&self, shape_id: &str) -> Option<&str> {
        self.forms.get(shape_id).map(|f| f.document.as_str())
    }

    /// `{"forms": [{"shapeId", "targetClass", "label"}]}`, one entry per
    /// shape with a target class, ordered by shape id.
    pub fn handle_list_forms(&self) -> ApiResponse {
        ApiResponse {
            status: 200,
            body: self.listing.clone(),
        }
    }

    /// `shape_id` is the full IRI or a CURIE using the shapes' prefixes.
    pub fn handle_get_form(&self, shape_id: &str) -> ApiResponse {
        let doc = self
            .form_document(shape_id)
            .or_else(|| self.form_document(&self.shapes.expand_curie(shape_id)));
        match doc {
            Some(doc) => ApiResponse {
                status: 200,
                body: doc.to_string(),
            },
            None => ApiError::NotFound(format!("no form for shape <{shape_id}>")).response(),
        }
    }

    /// Phase 1 and syntactic validators. Never probes, never mints.
    pub fn validate(&self, payload: &SubmissionPayload) -> Result<ValidationReport, ApiError> {
        let schema = self.schema_for(payload)?;
        Ok(check_payload(payload, schema, &self.shapes, &self.bindings, &self.registry))
    }

    pub fn handle_validate(&self, body: &str) -> ApiResponse {
        let payload = match parse_payload(body) {
            Ok(p) => p,
            Err(resp) => return resp,
        };
        match self.validate(&payload) {
            Ok(report) => ApiResponse {
                status: 200,
                body: report.to_document(),
            },
            Err(e) => e.response(),
        }
    }

    /// Full pipeline: both phases, minting, update building and delivery.
    pub fn submit(&self, payload: &SubmissionPayload) -> Result<SubmitReply, ApiError> {
        let schema = self.schema_for(payload)?;
        let ctx = Phase2Context {
            bindings: &self.bindings,
            registry: &self.registry,
            probe: self.probe.as_ref(),
        };
        let outcome = process_submission(payload, schema, &self.shapes, ctx, &self.minter)
            .map_err(|e| ApiError::Internal(e.to_string()))?;
        let (subject, mut graph, report) = match outcome {
            SubmissionOutcome::Rejected { report } => return Ok(SubmitReply::Rejected(report)),
            SubmissionOutcome::Accepted { subject, graph, report } => (subject, graph, report),
        };
        let update = build_update(&graph, self.target_graph.as_deref()).map_err(|e| ApiError::Internal(e.to_string()))?;
        let used: Vec<(String, String)> = self
            .shapes
            .prefixes()
            .iter()
            .filter(|(_, ns)| mentioned_iris(&graph).any(|iri| iri.starts_with(ns.as_str())))
            .map(|(p, ns)| (p.clone(), ns.clone()))
            .collect();
        for (prefix, ns) in used {
            graph.set_prefix(prefix, ns);
        }
        let mut acceptance = Acceptance {
            subject,
            turtle: serialize_turtle(&graph),
            update,
            submitted: false,
            report,
        };
        match &self.delivery {
            Delivery::DryRun => Ok(SubmitReply::Accepted(acceptance)),
            Delivery::Endpoint { url, transport } => match submit(url, &acceptance.update, transport.as_ref()) {
                SubmitOutcome::Ok => {
                    acceptance.submitted = true;
                    Ok(SubmitReply::Accepted(acceptance))
                }
                SubmitOutcome::Failed { status, body } => Ok(SubmitReply::DeliveryFailed {
                    acceptance,
                    status,
                    message: body,
                }),
            },
        }
    }

    /// 200 with the acceptance document, 422 with the report on
    /// rejection, 502 with the Turtle when the endpoint refuses.
    pub fn handle_submit(&self, body: &str) -> ApiResponse {
        let payload = match parse_payload(body) {
            Ok(p) => p,
            Err(resp) => return resp,
        };
        match self.submit(&payload) {
            Ok(SubmitReply::Accepted(acceptance)) => {
                let mut doc = serde_json::to_value(&acceptance).expect("acceptance serializes");
                doc["status"] = json!("accepted");
                ApiResponse::json(200, &doc)
            }
            Ok(SubmitReply::Rejected(report)) => ApiResponse {
                status: 422,
                body: report.to_document(),
            },
            Ok(SubmitReply::DeliveryFailed {
                acceptance,
                status,
                message,
            }) => {
                let mut doc = serde_json::to_value(&acceptance).expect("acceptance serializes");
                doc["status"] = json!("delivery_failed");
                doc["endpointStatus"] = json!(status);
                doc["message"] = json!(message);
                ApiResponse::json(502, &doc)
            }
            Err(e) => e.response(),
        }
    }

    fn schema_for(&self, payload: &SubmissionPayload) -> Result<&FormSchema, ApiError> {
        self.form(&payload.shape_id)
            .ok_or_else(|| ApiError::NotFound(format!("no form for shape <{}>", payload.shape_id)))
    }
}

fn mentioned_iris(graph: &Graph) -> impl Iterator<Item = &str> {
    graph.iter().flat_map(|t| {
        [t.subject(), t.predicate(), t.object()]
            .into_iter()
            .filter_map(|term| term.as_iri().or(term.datatype()))
    })
}

fn parse_payload(body: &str) -> Result<SubmissionPayload, ApiResponse> {
    SubmissionPayload::from_json(body).map_err(|e| ApiResponse::error(400, "bad_request", format!("malformed payload: {e}")))
}

fn report_value<S: serde::Serializer>(report: &ValidationReport, s: S) -> Result<S::Ok, S::Error> {
    let value: Value = serde_json::from_str(&report.to_document()).expect("report document is JSON");
    value.serialize(s)
}
