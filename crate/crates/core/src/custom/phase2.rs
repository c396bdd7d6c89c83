use std::thread;

use super::probe::ResolverProbe;
use super::registry::{eval_condition, Mode, ValidatorBinding, ValidatorRegistry};
use crate::rdf::Term;
use crate::submission::SubmissionPayload;
use crate::validate::{Severity, ValidationResult};

/// Everything phase 2 needs besides the payload.
#[derive(Clone, Copy)]
pub struct Phase2Context<'a> {
    pub bindings: &'a [ValidatorBinding],
    pub registry: &'a ValidatorRegistry,
    pub probe: &'a dyn ResolverProbe,
}

/// Runs every binding of the payload's shape whose condition holds.
///
/// Each value at the bound path is checked; `required` bindings report a
/// missing path instead. Results follow binding declaration order, then
/// value order. External checks run concurrently.
pub fn run_phase2(
    payload: &SubmissionPayload,
    focus: &Term,
    bindings: &[ValidatorBinding],
    registry: &ValidatorRegistry,
    probe: &dyn ResolverProbe,
) -> Vec<ValidationResult> {
    run(payload, focus, bindings, registry, Some(probe))
}

/// Phase 2 restricted to syntactic validators. Makes no probe calls.
pub fn run_syntactic(
    payload: &SubmissionPayload,
    focus: &Term,
    bindings: &[ValidatorBinding],
    registry: &ValidatorRegistry,
) -> Vec<ValidationResult> {
    run(payload, focus, bindings, registry, None)
}

struct Task<'a> {
    binding: &'a ValidatorBinding,
    value: &'a str,
}

struct NoProbe;

impl ResolverProbe for NoProbe {
    fn probe(&self, url: &str) -> super::ProbeOutcome {
        unreachable!("external check of {url} during a syntactic-only run")
    }
}

fn run(
    payload: &SubmissionPayload,
    focus: &Term,
    bindings: &[ValidatorBinding],
    registry: &ValidatorRegistry,
    probe: Option<&dyn ResolverProbe>,
) -> Vec<ValidationResult> {
    let mut slots: Vec<Vec<ValidationResult>> = Vec::new();
    let mut tasks: Vec<(usize, Task)> = Vec::new();
    for binding in bindings {
        if binding.shape_id() != payload.shape_id
            || (probe.is_none() && binding.mode() == Mode::External)
            || binding.condition().is_some_and(|c| !eval_condition(c, payload))
        {
            continue;
        }
        let values = payload.values_at(binding.path());
        if binding.is_required_check() {
            if values.is_empty() {
                slots.push(vec![ValidationResult::custom(
                    binding.validator_name(),
                    focus,
                    binding.path(),
                    None,
                    format!("a value for <{}> is required", binding.path()),
                    Severity::Violation,
                )]);
            }
            continue;
        }
        for value in values {
            tasks.push((slots.len(), Task { binding, value }));
            slots.push(Vec::new());
        }
    }

    let probe = probe.unwrap_or(&NoProbe);
    let check = |task: &Task| -> Option<ValidationResult> {
        let validator = registry.get(task.binding.validator_name())?;
        let finding = validator.check(task.value, probe)?;
        Some(ValidationResult::custom(
            task.binding.validator_name(),
            focus,
            task.binding.path(),
            Some(Term::literal(task.value)),
            finding.message,
            finding.severity,
        ))
    };

    let external = tasks.iter().filter(|(_, t)| t.binding.mode() == Mode::External).count();
    if external > 1 {
        let outcomes: Vec<(usize, Option<ValidationResult>)> = thread::scope(|scope| {
            let handles: Vec<_> = tasks
                .iter()
                .map(|(slot, task)| (*slot, scope.spawn(|| check(task))))
                .collect();
            handles
                .into_iter()
                .map(|(slot, h)| (slot, h.join().expect("validator panicked")))
                .collect()
        });
        for (slot, result) in outcomes {
            slots[slot].extend(result);
        }
    } else {
        for (slot, task) in &tasks {
            slots[*slot].extend(check(task));
        }
    }
    slots.into_iter().flatten().collect()
}
