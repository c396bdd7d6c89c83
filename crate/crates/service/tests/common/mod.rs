#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;
use shaclform::custom::{MockProbe, ValidatorRegistry};
use shaclform_service::{App, Delivery, ServiceConfig};
use shaclform_testkit::endpoint::RecordingEndpoint;

pub const SHAPE: &str = "http://schema.org/BibliographicResourceShape";
pub const AGENT: &str = "http://schema.org/ResponsibleAgentShape";
pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const TITLE: &str = "http://purl.org/dc/terms/title";
pub const HAS_IDENTIFIER: &str = "http://purl.org/spar/datacite/hasIdentifier";
pub const JOURNAL_ARTICLE: &str = "http://purl.org/spar/fabio/JournalArticle";
pub const DOI: &str = "10.1145/3594721";
pub const MISSING_DOI: &str = "10.9999/nonexistent-xyz";

pub fn config_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("config")
}

pub fn example_config() -> ServiceConfig {
    ServiceConfig::load(&config_dir().join("shaclform.toml"), &ValidatorRegistry::builtin()).unwrap()
}

pub struct Harness {
    pub app: Arc<App>,
    pub probe: Arc<MockProbe>,
    pub endpoint: Arc<RecordingEndpoint>,
}

/// The example configuration with `probe` and a recording endpoint.
pub fn harness(probe: MockProbe, endpoint_status: u16) -> Harness {
    let probe = Arc::new(probe);
    let endpoint = Arc::new(RecordingEndpoint::new(endpoint_status));
    let app = App::new(&example_config(), ValidatorRegistry::builtin())
        .unwrap()
        .with_probe(probe.clone())
        .with_delivery(Delivery::Endpoint {
            url: "http://triplestore.test/sparql".into(),
            transport: endpoint.clone(),
        });
    Harness {
        app: Arc::new(app),
        probe,
        endpoint,
    }
}

pub fn doi_payload(doi: &str) -> String {
    serde_json::json!({
        "shapeId": SHAPE,
        "values": {
            TYPE: [JOURNAL_ARTICLE],
            TITLE: ["Structured data entry"],
            HAS_IDENTIFIER: [doi],
        }
    })
    .to_string()
}

pub fn json(body: &str) -> Value {
    serde_json::from_str(body).unwrap()
}

pub fn phases(report: &Value) -> Vec<String> {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["phase"].as_str().unwrap().to_string())
        .collect()
}
