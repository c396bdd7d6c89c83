//! Phase-2 validation: named per-property validators, conditional
//! bindings and the external resolver probe.

mod identifiers;
mod phase2;
mod probe;
mod registry;

pub use identifiers::{
    doi_syntax, doi_url, issn_check_digit, issn_checksum, mod11_2_check_digit, orcid_checksum,
};
pub use phase2::{run_phase2, run_syntactic, Phase2Context};
pub use probe::{
    classify, doi_resolves, url_reachable, MockProbe, ProbeOutcome, ProbeSettings, ResolverProbe,
};
pub use registry::{
    eval_condition, Condition, Mode, UnknownValidator, Validator, ValidatorBinding, ValidatorRegistry,
    REQUIRED,
};

use crate::validate::Severity;

/// A validator's verdict on one value; `None` from a validator means pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl Finding {
    pub fn violation(message: String) -> Self {
        Finding {
            severity: Severity::Violation,
            message,
        }
    }

    pub fn warning(message: String) -> Self {
        Finding {
            severity: Severity::Warning,
            message,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.severity == Severity::Violation
    }
}
