use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::Deserialize;

use super::identifiers::{doi_syntax, doi_url};
use super::Finding;

/// What an HTTP probe observed: the final status code after following
/// redirects, or a transport failure (timeout, DNS, TLS, too many redirects).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Status(u16),
    Failed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeSettings {
    pub timeout: Duration,
    pub max_redirects: u32,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        ProbeSettings {
            timeout: Duration::from_secs(10),
            max_redirects: 5,
        }
    }
}

/// Client for external resolution checks. Implementations must be safe to
/// call from several threads at once.
pub trait ResolverProbe: Send + Sync {
    fn probe(&self, url: &str) -> ProbeOutcome;
}

/// Maps a probe outcome to a finding: 2xx/3xx pass, 404/410 are
/// violations, anything else is a warning.
pub fn classify(subject: &str, outcome: ProbeOutcome) -> Option<Finding> {
    match outcome {
        ProbeOutcome::Status(200..=399) => None,
        ProbeOutcome::Status(code @ (404 | 410)) => {
            Some(Finding::violation(format!("{subject} does not resolve (HTTP {code})")))
        }
        ProbeOutcome::Status(code) => Some(Finding::warning(format!(
            "could not confirm that {subject} resolves: HTTP {code}"
        ))),
        ProbeOutcome::Failed(cause) => Some(Finding::warning(format!(
            "could not confirm that {subject} resolves: {cause}"
        ))),
    }
}

/// Syntax check first; the probe is only consulted for well-formed DOIs.
pub fn doi_resolves(value: &str, probe: &dyn ResolverProbe) -> Option<Finding> {
    if let Some(finding) = doi_syntax(value) {
        return Some(finding);
    }
    classify(&format!("DOI {value}"), probe.probe(&doi_url(value)))
}

pub fn url_reachable(value: &str, probe: &dyn ResolverProbe) -> Option<Finding> {
    match url::Url::parse(value) {
        Ok(url) if matches!(url.scheme(), "http" | "https") && url.has_host() => {
            classify(&format!("URL {value}"), probe.probe(value))
        }
        _ => Some(Finding::violation(format!("{value:?} is not an absolute URL"))),
    }
}

/// Fixture-backed probe. Never touches the network.
///
/// Fixture document:
/// `{"default": 200, "responses": {"https://doi.org/10.1/x": 302, "https://slow.example": "timeout"}}`.
/// A URL without an entry falls back to `default`, or fails when there is
/// no default.
#[derive(Debug, Default)]
pub struct MockProbe {
    responses: BTreeMap<String, ProbeOutcome>,
    default: Option<ProbeOutcome>,
    calls: AtomicUsize,
    seen: Mutex<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FixtureOutcome {
    Status(u16),
    Failure(String),
}

impl From<FixtureOutcome> for ProbeOutcome {
    fn from(f: FixtureOutcome) -> Self {
        match f {
            FixtureOutcome::Status(code) => ProbeOutcome::Status(code),
            FixtureOutcome::Failure(cause) => ProbeOutcome::Failed(cause),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    #[serde(default)]
    default: Option<FixtureOutcome>,
    #[serde(default)]
    responses: BTreeMap<String, FixtureOutcome>,
}

impl MockProbe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let fixture: Fixture = serde_json::from_str(text)?;
        Ok(MockProbe {
            responses: fixture.responses.into_iter().map(|(k, v)| (k, v.into())).collect(),
            default: fixture.default.map(Into::into),
            ..Self::default()
        })
    }

    pub fn with_response(mut self, url: impl Into<String>, outcome: ProbeOutcome) -> Self {
        self.responses.insert(url.into(), outcome);
        self
    }

    pub fn with_default(mut self, outcome: ProbeOutcome) -> Self {
        self.default = Some(outcome);
        self
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    /// URLs probed so far, in call order.
    pub fn seen(&self) -> Vec<String> {
        self.seen.lock().unwrap().clone()
    }
}

impl ResolverProbe for MockProbe {
    fn probe(&self, url: &str) -> ProbeOutcome {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.seen.lock().unwrap().push(url.to_string());
        self.responses
            .get(url)
            .or(self.default.as_ref())
            .cloned()
            .unwrap_or_else(|| ProbeOutcome::Failed(format!("no mock response for {url}")))
    }
}
