//! Backtracking existence oracle.

use super::{slot_count, validate_assignment, ValidationError};
use crate::monoid::PartialAssignment;
use crate::problems::{ProblemSpec, BLUE, RED};

/// Largest search space (product of domain sizes) searched by default.
pub const DEFAULT_FEASIBILITY_GUARD: u128 = 10_000_000;

fn domains(spec: &ProblemSpec) -> Vec<Vec<u32>> {
    let n = slot_count(spec);
    match spec {
        ProblemSpec::Proper { colors, .. }
        | ProblemSpec::NonrepColor { colors, .. }
        | ProblemSpec::Acyclic { colors, .. } => vec![(0..*colors).collect(); n],
        ProblemSpec::NonrepSeq { lists } => lists.lists.clone(),
        ProblemSpec::Ramsey { .. } => vec![vec![RED, BLUE]; n],
        ProblemSpec::Choice { system } => system
            .marginals
            .iter()
            .map(|block| (0..block.len() as u32).collect())
            .collect(),
    }
}

/// Whether some total assignment satisfies every constraint of `spec`,
/// decided by filling slots in order and pruning on the first violation.
pub fn exhaustive_feasibility(spec: &ProblemSpec, guard: u128) -> Result<bool, ValidationError> {
    let domains = domains(spec);
    let mut size: u128 = 1;
    for d in &domains {
        size = size.saturating_mul(d.len() as u128);
        if size > guard {
            return Err(ValidationError::TooLarge { what: "search space", size, limit: guard });
        }
    }
    let mut state = PartialAssignment::empty(domains.len());
    search(spec, &domains, &mut state, 0)
}

fn search(
    spec: &ProblemSpec,
    domains: &[Vec<u32>],
    state: &mut PartialAssignment,
    slot: usize,
) -> Result<bool, ValidationError> {
    if slot == domains.len() {
        return Ok(true);
    }
    for &value in &domains[slot] {
        state.set(slot, value);
        if validate_assignment(spec, state)?.is_none() && search(spec, domains, state, slot + 1)? {
            return Ok(true);
        }
    }
    state.clear(slot);
    Ok(false)
}
