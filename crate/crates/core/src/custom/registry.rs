use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::identifiers::{doi_syntax, issn_checksum, orcid_checksum};
use super::probe::{doi_resolves, url_reachable, ResolverProbe};
use super::Finding;
use crate::rdf::Term;
use crate::submission::SubmissionPayload;

/// Name of the built-in presence check. It is handled by the phase-2
/// runner directly rather than applied per value.
pub const REQUIRED: &str = "required";

/// Syntactic validators are pure and may run during live checking.
/// External ones contact other services and run only at submission.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Syntactic,
    External,
}

pub trait Validator: Send + Sync {
    fn mode(&self) -> Mode;
    fn check(&self, value: &str, probe: &dyn ResolverProbe) -> Option<Finding>;
}

struct Pure(fn(&str) -> Option<Finding>);

impl Validator for Pure {
    fn mode(&self) -> Mode {
        Mode::Syntactic
    }

    fn check(&self, value: &str, _: &dyn ResolverProbe) -> Option<Finding> {
        (self.0)(value)
    }
}

struct Probing(fn(&str, &dyn ResolverProbe) -> Option<Finding>);

impl Validator for Probing {
    fn mode(&self) -> Mode {
        Mode::External
    }

    fn check(&self, value: &str, probe: &dyn ResolverProbe) -> Option<Finding> {
        (self.0)(value, probe)
    }
}

struct Presence;

impl Validator for Presence {
    fn mode(&self) -> Mode {
        Mode::Syntactic
    }

    fn check(&self, _: &str, _: &dyn ResolverProbe) -> Option<Finding> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown validator {0:?}")]
pub struct UnknownValidator(pub String);

/// Named validators. Immutable once the service has started.
#[derive(Clone)]
pub struct ValidatorRegistry {
    validators: BTreeMap<String, Arc<dyn Validator>>,
}

impl ValidatorRegistry {
    pub fn empty() -> Self {
        ValidatorRegistry {
            validators: BTreeMap::new(),
        }
    }

    /// `doi_syntax`, `doi_resolves`, `orcid_checksum`, `issn_checksum`,
    /// `url_reachable` and `required`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("doi_syntax", Arc::new(Pure(doi_syntax)));
        r.register("orcid_checksum", Arc::new(Pure(orcid_checksum)));
        r.register("issn_checksum", Arc::new(Pure(issn_checksum)));
        r.register("doi_resolves", Arc::new(Probing(doi_resolves)));
        r.register("url_reachable", Arc::new(Probing(url_reachable)));
        r.register(REQUIRED, Arc::new(Presence));
        r
    }

    pub fn register(&mut self, name: impl Into<String>, validator: Arc<dyn Validator>) {
        self.validators.insert(name.into(), validator);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Validator> {
        self.validators.get(name).map(|v| v.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.validators.keys().map(String::as_str)
    }

    /// Creates a binding, taking its mode from the registered validator.
    pub fn bind(
        &self,
        validator_name: &str,
        shape_id: &str,
        path: &str,
        condition: Option<Condition>,
    ) -> Result<ValidatorBinding, UnknownValidator> {
        let validator = self
            .get(validator_name)
            .ok_or_else(|| UnknownValidator(validator_name.to_string()))?;
        Ok(ValidatorBinding {
            validator_name: validator_name.to_string(),
            shape_id: shape_id.to_string(),
            path: path.to_string(),
            mode: validator.mode(),
            condition,
        })
    }
}

impl Default for ValidatorRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl std::fmt::Debug for ValidatorRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.validators.keys()).finish()
    }
}

/// Holds when the payload has a value at `when_path` equal to `equals`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    #[serde(rename = "whenPath")]
    pub when_path: String,
    pub equals: Term,
}

impl Condition {
    pub fn new(when_path: impl Into<String>, equals: Term) -> Self {
        Condition {
            when_path: when_path.into(),
            equals,
        }
    }
}

/// Payload values are raw strings; they are compared with the lexical
/// value of `equals` (the IRI text for IRIs).
pub fn eval_condition(condition: &Condition, payload: &SubmissionPayload) -> bool {
    payload
        .values_at(&condition.when_path)
        .iter()
        .any(|v| v == condition.equals.value())
}

/// A validator attached to one property of one shape. Built through
/// [`ValidatorRegistry::bind`], so the name always exists in the registry
/// it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatorBinding {
    validator_name: String,
    shape_id: String,
    path: String,
    mode: Mode,
    condition: Option<Condition>,
}

impl ValidatorBinding {
    pub fn validator_name(&self) -> &str {
        &self.validator_name
    }

    pub fn shape_id(&self) -> &str {
        &self.shape_id
    }

    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn condition(&self) -> Option<&Condition> {
        self.condition.as_ref()
    }

    pub fn is_required_check(&self) -> bool {
        self.validator_name == REQUIRED
    }
}
