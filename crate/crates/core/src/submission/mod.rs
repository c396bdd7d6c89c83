//! From payload to triplestore: materialization, two-phase checking,
//! IRI minting and SPARQL Update delivery.

mod materialize;
mod mint;
mod payload;
mod process;
mod transport;
mod update;

pub use materialize::{materialize, FieldIssue, MaterializeError};
pub use mint::{MintError, MintStrategy, Minter, MintingConfig, COUNTER_WIDTH};
pub use payload::SubmissionPayload;
pub use process::{check_payload, process_submission, SubmissionOutcome, PROVISIONAL_SUBJECT};
pub use transport::{
    dry_run_turtle, submit, DryRunTransport, HttpReply, SubmitOutcome, UpdateTransport,
    SPARQL_UPDATE_CONTENT_TYPE,
};
pub use update::{build_update, update_body, UpdateError};
