//! Sequences from per-position lists with no block immediately repeated.
//!
//! Positions are filled left to right under the free monoid on one letter;
//! a repeated block of length `t` ending at the newest position erases the
//! last `t` positions.

use serde::{Deserialize, Serialize};

use super::ProblemError;
use crate::condition::presets::nonrep_sequence_rows;
use crate::condition::{LalConditionTable, PresetParams};
use crate::engine::{ProblemInstance, SampleError, ViolationClass, WitnessEvent};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction};
use crate::rng::DrawRng;

/// Allowed symbols per position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ListSystem {
    pub lists: Vec<Vec<u32>>,
}

impl ListSystem {
    /// `n` positions sharing the alphabet `0..alphabet`.
    pub fn uniform(n: usize, alphabet: u32) -> Self {
        ListSystem { lists: vec![(0..alphabet).collect(); n] }
    }

    pub fn min_list_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Length of the longest block ending at index `end` (inclusive) that
/// repeats the block right before it.
pub(crate) fn longest_suffix_square(seq: &[u32], end: usize) -> Option<usize> {
    let len = end + 1;
    (1..=len / 2)
        .rev()
        .find(|&t| seq[len - 2 * t..len - t] == seq[len - t..len])
}

#[derive(Clone, Debug)]
pub struct NonrepSequence {
    lists: ListSystem,
    weight: f64,
}

impl NonrepSequence {
    /// Lists shorter than four are accepted; the condition check then
    /// reports the failure.
    pub fn new(lists: ListSystem) -> Result<Self, ProblemError> {
        if let Some(k) = lists.lists.iter().position(Vec::is_empty) {
            return Err(ProblemError::InvalidParameter(format!("list {k} is empty")));
        }
        let list_size = lists.min_list_size().max(1) as u32;
        let weight = PresetParams::NonrepSeq { list_size }.evaluate()?.weight;
        Ok(NonrepSequence { lists, weight })
    }

    pub fn lists(&self) -> &ListSystem {
        &self.lists
    }

    fn prefix(state: &PartialAssignment) -> Vec<u32> {
        state.values().iter().map_while(|v| *v).collect()
    }
}

impl ProblemInstance for NonrepSequence {
    fn name(&self) -> &str {
        "nonrep-seq"
    }

    fn num_slots(&self) -> usize {
        self.lists.lists.len()
    }

    fn monoid(&self) -> MonoidFamily {
        MonoidFamily::FreePower
    }

    fn sample(&self, slot: usize, _: &PartialAssignment, rng: &mut DrawRng) -> Result<u32, SampleError> {
        let list = &self.lists.lists[slot];
        Ok(list[rng.below(list.len() as u64) as usize])
    }

    /// Largest repeated block ending at `last`.
    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent> {
        let seq = Self::prefix(state);
        if last >= seq.len() {
            return None;
        }
        let t = longest_suffix_square(&seq, last)?;
        Some(WitnessEvent {
            class: ViolationClass::RepeatedBlock,
            alpha: MonoidElement::free_power(t as u64 - 1),
            detail: vec![last + 1 - 2 * t, t],
        })
    }

    fn goal(&self, state: &PartialAssignment) -> bool {
        let seq = Self::prefix(state);
        (0..seq.len()).all(|end| longest_suffix_square(&seq, end).is_none())
    }

    fn condition_table(&self) -> LalConditionTable {
        let mut table = LalConditionTable::new(MonoidFamily::FreePower);
        table.push(GeneratorId(0), nonrep_sequence_rows(self.lists.min_list_size() as u32));
        table
    }

    fn weight(&self) -> WeightFunction {
        WeightFunction::new(vec![self.weight]).expect("weight is positive")
    }
}
