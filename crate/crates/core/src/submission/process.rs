use super::materialize::materialize;
use super::mint::{MintError, Minter};
use super::SubmissionPayload;
use crate::custom::{run_phase2, run_syntactic, Phase2Context, ValidatorBinding, ValidatorRegistry};
use crate::form::FormSchema;
use crate::rdf::{Graph, Term, Triple};
use crate::shacl::ShapesGraph;
use crate::validate::{validate_with_focus, ValidationReport};

/// Subject used while a payload is being checked. The real IRI is minted
/// only once the payload is accepted.
pub const PROVISIONAL_SUBJECT: &str = "urn:shaclform:pending";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmissionOutcome {
    /// `report` may still hold warnings (for example, an unreachable resolver).
    Accepted {
        subject: String,
        graph: Graph,
        report: ValidationReport,
    },
    Rejected { report: ValidationReport },
}

/// Materializes under the provisional subject and runs phase 1. The new
/// entity is a focus node of the form's shape whatever its types, on top of
/// the class-targeted nodes.
fn phase1(
    payload: &SubmissionPayload,
    schema: &FormSchema,
    shapes: &ShapesGraph,
) -> Result<(Graph, ValidationReport), ValidationReport> {
    let subject = Term::iri(PROVISIONAL_SUBJECT);
    let graph = materialize(payload, schema, PROVISIONAL_SUBJECT).map_err(|e| e.to_report(&subject))?;
    let report = validate_with_focus(&graph, shapes, &[(schema.shape_id.as_str(), subject)]);
    Ok((graph, report))
}

/// Live check: phase 1, then syntactic validators only if phase 1
/// conforms. Never probes external services and never mints.
pub fn check_payload(
    payload: &SubmissionPayload,
    schema: &FormSchema,
    shapes: &ShapesGraph,
    bindings: &[ValidatorBinding],
    registry: &ValidatorRegistry,
) -> ValidationReport {
    match phase1(payload, schema, shapes) {
        Err(report) => report,
        Ok((_, report)) if !report.conforms() => report,
        Ok((_, report)) => {
            let subject = Term::iri(PROVISIONAL_SUBJECT);
            report.merge(ValidationReport::from_results(run_syntactic(
                payload, &subject, bindings, registry,
            )))
        }
    }
}

/// Full pipeline: materialize, phase 1, then phase 2 only if phase 1
/// conforms; on acceptance mint an IRI and relabel the graph with it.
pub fn process_submission(
    payload: &SubmissionPayload,
    schema: &FormSchema,
    shapes: &ShapesGraph,
    phase2: Phase2Context<'_>,
    minter: &Minter,
) -> Result<SubmissionOutcome, MintError> {
    let (graph, report) = match phase1(payload, schema, shapes) {
        Err(report) => return Ok(SubmissionOutcome::Rejected { report }),
        Ok((_, report)) if !report.conforms() => return Ok(SubmissionOutcome::Rejected { report }),
        Ok(ok) => ok,
    };
    let provisional = Term::iri(PROVISIONAL_SUBJECT);
    let custom = run_phase2(payload, &provisional, phase2.bindings, phase2.registry, phase2.probe);
    let report = report.merge(ValidationReport::from_results(custom));
    if !report.conforms() {
        return Ok(SubmissionOutcome::Rejected { report });
    }
    let subject = minter.mint()?;
    let minted = Term::iri(subject.as_str());
    let graph = replace_term(&graph, &provisional, &minted);
    let report = ValidationReport::from_results(
        report
            .into_results()
            .into_iter()
            .map(|mut r| {
                if r.focus_node == provisional {
                    r.focus_node = minted.clone();
                }
                r
            })
            .collect(),
    );
    Ok(SubmissionOutcome::Accepted { subject, graph, report })
}

fn replace_term(graph: &Graph, from: &Term, to: &Term) -> Graph {
    let swap = |t: &Term| if t == from { to.clone() } else { t.clone() };
    graph
        .iter()
        .map(|t| Triple::new(swap(t.subject()), t.predicate().clone(), swap(t.object())).expect("same term kinds"))
        .collect()
}
