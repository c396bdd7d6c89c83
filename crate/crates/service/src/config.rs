//! Service configuration file.
//!
//! ```toml
//! shapes_path = "shapes.ttl"          # relative to this file
//! listen_address = "127.0.0.1:8080"   # SHACLFORM_LISTEN overrides
//! endpoint_url = "http://localhost:9999/sparql"   # absent: dry run
//! target_graph = "https://example.org/graph/"     # optional
//! static_dir = "static"               # optional
//!
//! [minting]
//! base_iri = "https://example.org/br/"
//! strategy = "uuid"                   # or "counter"
//! counter_state_path = "counter.txt"  # counter only
//!
//! [probe]
//! mode = "live"                       # or "mock"
//! fixtures_path = "probe.json"        # mock only
//!
//! [label_overrides]
//! "datacite:hasIdentifier" = "DOI"
//!
//! [[bindings]]
//! validator = "doi_resolves"
//! shape = "schema:BibliographicResourceShape"
//! path = "datacite:hasIdentifier"
//! when = { path = "rdf:type", equals = "fabio:JournalArticle" }
//! ```
//!
//! IRIs may be written as CURIEs using the prefixes of the shapes file.

use std::collections::BTreeMap;
use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use shaclform::custom::{Condition, ValidatorBinding, ValidatorRegistry};
use shaclform::rdf::{parse_turtle, Term};
use shaclform::shacl::{load_shapes, resolve_inheritance, ShapesGraph};
use shaclform::submission::{MintError, MintStrategy, Minter, MintingConfig};
use thiserror::Error;

pub const LISTEN_ENV: &str = "SHACLFORM_LISTEN";
pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Syntax { path: PathBuf, source: toml::de::Error },
    #[error("shapes file {path}: {message}")]
    Shapes { path: PathBuf, message: String },
    #[error("listen address {0:?} is not host:port")]
    ListenAddress(String),
    #[error("endpoint_url {0:?} is not an absolute http(s) URL")]
    EndpointUrl(String),
    #[error("binding {index}: {message}")]
    Binding { index: usize, message: String },
    #[error("minting: {0}")]
    Minting(#[from] MintError),
    #[error("probe: {0}")]
    Probe(String),
    #[error("static_dir {0} is not a directory")]
    StaticDir(PathBuf),
    #[error("form for <{shape}>: {message}")]
    Form { shape: String, message: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    shapes_path: PathBuf,
    listen_address: Option<String>,
    endpoint_url: Option<String>,
    target_graph: Option<String>,
    static_dir: Option<PathBuf>,
    minting: RawMinting,
    #[serde(default)]
    probe: RawProbe,
    #[serde(default)]
    label_overrides: BTreeMap<String, String>,
    #[serde(default)]
    bindings: Vec<RawBinding>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMinting {
    base_iri: String,
    #[serde(default)]
    strategy: MintStrategy,
    counter_state_path: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProbe {
    #[serde(default)]
    mode: ProbeMode,
    fixtures_path: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeMode {
    #[default]
    Live,
    Mock,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBinding {
    validator: String,
    shape: String,
    path: String,
    when: Option<RawCondition>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCondition {
    path: String,
    equals: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeConfig {
    Live,
    Mock { fixtures_path: PathBuf },
}

/// A fully checked configuration: shapes are loaded and resolved, bindings
/// refer to known validators and shapes, the minter is ready.
#[derive(Debug)]
pub struct ServiceConfig {
    pub shapes_path: PathBuf,
    pub shapes: ShapesGraph,
    pub bindings: Vec<ValidatorBinding>,
    pub label_overrides: BTreeMap<String, String>,
    pub minting: MintingConfig,
    pub endpoint_url: Option<String>,
    pub target_graph: Option<String>,
    pub probe: ProbeConfig,
    pub listen_address: SocketAddr,
    pub static_dir: Option<PathBuf>,
}

impl ServiceConfig {
    /// Reads and validates `path`. The listen address comes from
    /// `SHACLFORM_LISTEN` when set.
    pub fn load(path: &Path, registry: &ValidatorRegistry) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base, registry, std::env::var(LISTEN_ENV).ok())
    }

    /// Relative paths in `text` are resolved against `base`.
    pub fn from_toml(
        text: &str,
        base: &Path,
        registry: &ValidatorRegistry,
        listen_override: Option<String>,
    ) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|source| ConfigError::Syntax {
            path: base.to_path_buf(),
            source,
        })?;

        let shapes_path = base.join(&raw.shapes_path);
        let shapes = read_shapes(&shapes_path)?;

        let listen = listen_override
            .or(raw.listen_address)
            .unwrap_or_else(|| DEFAULT_LISTEN.to_string());
        let listen_address = listen.parse().map_err(|_| ConfigError::ListenAddress(listen))?;

        if let Some(url) = &raw.endpoint_url {
            if !is_http_url(url) {
                return Err(ConfigError::EndpointUrl(url.clone()));
            }
        }
        let target_graph = raw.target_graph.map(|g| shapes.expand_curie(&g));

        let minting = MintingConfig {
            base_iri: shapes.expand_curie(&raw.minting.base_iri),
            strategy: raw.minting.strategy,
            counter_state_path: raw.minting.counter_state_path.map(|p| base.join(p)),
        };
        Minter::new(&minting)?;

        let probe = match (raw.probe.mode, raw.probe.fixtures_path) {
            (ProbeMode::Live, None) => ProbeConfig::Live,
            (ProbeMode::Live, Some(_)) => {
                return Err(ConfigError::Probe("fixtures_path is only used with mode = \"mock\"".into()))
            }
            (ProbeMode::Mock, Some(p)) => ProbeConfig::Mock {
                fixtures_path: base.join(p),
            },
            (ProbeMode::Mock, None) => return Err(ConfigError::Probe("mode = \"mock\" needs fixtures_path".into())),
        };

        let static_dir = match raw.static_dir {
            Some(dir) => {
                let dir = base.join(dir);
                if !dir.is_dir() {
                    return Err(ConfigError::StaticDir(dir));
                }
                Some(dir)
            }
            None => None,
        };

        let label_overrides = raw
            .label_overrides
            .into_iter()
            .map(|(k, v)| (shapes.expand_curie(&k), v))
            .collect();

        let mut bindings = Vec::new();
        for (index, b) in raw.bindings.into_iter().enumerate() {
            let err = |message: String| ConfigError::Binding { index, message };
            let shape = shapes.expand_curie(&b.shape);
            if shapes.get(&shape).is_none() {
                return Err(err(format!("unknown shape <{shape}>")));
            }
            let condition = b.when.map(|w| Condition::new(shapes.expand_curie(&w.path), value_term(&shapes, &w.equals)));
            let binding = registry
                .bind(&b.validator, &shape, &shapes.expand_curie(&b.path), condition)
                .map_err(|e| err(e.to_string()))?;
            bindings.push(binding);
        }

        Ok(ServiceConfig {
            shapes_path,
            shapes,
            bindings,
            label_overrides,
            minting,
            endpoint_url: raw.endpoint_url,
            target_graph,
            probe,
            listen_address,
            static_dir,
        })
    }
}

fn read_shapes(path: &Path) -> Result<ShapesGraph, ConfigError> {
    let fail = |message: String| ConfigError::Shapes {
        path: path.to_path_buf(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let graph = parse_turtle(&text, None).map_err(|e| fail(e.to_string()))?;
    let shapes = load_shapes(&graph).map_err(|e| fail(e.to_string()))?;
    resolve_inheritance(&shapes).map_err(|e| fail(e.to_string()))
}

/// Condition values that expand to an absolute IRI are IRIs, anything else
/// is a plain literal.
fn value_term(shapes: &ShapesGraph, text: &str) -> Term {
    let expanded = shapes.expand_curie(text);
    if expanded != text || text.contains("://") || text.starts_with("urn:") {
        Term::iri(expanded)
    } else {
        Term::literal(text)
    }
}

pub(crate) fn is_http_url(text: &str) -> bool {
    url::Url::parse(text).is_ok_and(|u| matches!(u.scheme(), "http" | "https") && u.host().is_some())
}
