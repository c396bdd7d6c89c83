//! A recording SPARQL endpoint stand-in.

use std::sync::Mutex;

use shaclform::submission::{HttpReply, UpdateTransport};

pub struct RecordingEndpoint {
    status: u16,
    requests: Mutex<Vec<(String, String)>>,
}

impl RecordingEndpoint {
    pub fn new(status: u16) -> Self {
        RecordingEndpoint {
            status,
            requests: Mutex::new(Vec::new()),
        }
    }

    /// (endpoint, update) pairs in arrival order.
    pub fn requests(&self) -> Vec<(String, String)> {
        self.requests.lock().unwrap().clone()
    }
}

impl UpdateTransport for RecordingEndpoint {
    fn post_update(&self, endpoint: &str, update: &str) -> Result<HttpReply, String> {
        self.requests.lock().unwrap().push((endpoint.to_string(), update.to_string()));
        Ok(HttpReply {
            status: self.status,
            body: format!("endpoint answered {}", self.status),
        })
    }
}
