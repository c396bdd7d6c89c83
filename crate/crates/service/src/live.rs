//! Network-backed probe and update transport.

use shaclform::custom::{ProbeOutcome, ProbeSettings, ResolverProbe};
use shaclform::submission::{HttpReply, UpdateTransport, SPARQL_UPDATE_CONTENT_TYPE};
use ureq::Agent;

/// HEAD request, retried as GET when the server answers 405. Redirects
/// are followed up to the configured limit; going over it is a failure.
pub struct HttpProbe {
    agent: Agent,
}

impl HttpProbe {
    pub fn new(settings: ProbeSettings) -> Self {
        let agent = Agent::config_builder()
            .timeout_global(Some(settings.timeout))
            .max_redirects(settings.max_redirects)
            .http_status_as_error(false)
            .build()
            .into();
        HttpProbe { agent }
    }
}

impl Default for HttpProbe {
    fn default() -> Self {
        Self::new(ProbeSettings::default())
    }
}

impl ResolverProbe for HttpProbe {
    fn probe(&self, url: &str) -> ProbeOutcome {
        let head = match self.agent.head(url).call() {
            Ok(resp) => resp.status().as_u16(),
            Err(e) => return ProbeOutcome::Failed(e.to_string()),
        };
        if head != 405 {
            return ProbeOutcome::Status(head);
        }
        match self.agent.get(url).call() {
            Ok(resp) => ProbeOutcome::Status(resp.status().as_u16()),
            Err(e) => ProbeOutcome::Failed(e.to_string()),
        }
    }
}

/// Posts updates as `application/sparql-update`.
pub struct HttpTransport {
    agent: Agent,
}

impl HttpTransport {
    pub fn new(settings: ProbeSettings) -> Self {
        let agent = Agent::config_builder()
            .timeout_global(Some(settings.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        HttpTransport { agent }
    }
}

impl Default for HttpTransport {
    fn default() -> Self {
        Self::new(ProbeSettings::default())
    }
}

impl UpdateTransport for HttpTransport {
    fn post_update(&self, endpoint: &str, update: &str) -> Result<HttpReply, String> {
        let mut resp = self
            .agent
            .post(endpoint)
            .content_type(SPARQL_UPDATE_CONTENT_TYPE)
            .send(update)
            .map_err(|e| e.to_string())?;
        let status = resp.status().as_u16();
        let body = resp.body_mut().read_to_string().unwrap_or_default();
        Ok(HttpReply { status, body })
    }
}
