//! The forward resampling loop shared by every solver.
//!
//! The engine keeps a word whose letters name the slots still to be filled.
//! Each step pops the first letter, fills the slot it names with a fresh
//! draw and asks the instance for a violation through that slot. On a
//! violation with element `alpha` the engine erases `alpha · b` (the popped
//! letter included) and prepends its canonical word, so the letters of the
//! word are always exactly the unfilled slots.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condition::{check_lal_inequality, ConditionError, LalConditionTable, SlackReport};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction, Word};
use crate::rng::DrawRng;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("no legal value for slot {0}")]
    NoLegalValue(usize),
}

/// A combinatorial search problem the engine can drive.
///
/// `detect` is only ever called right after `last` was filled, on a state
/// whose other filled slots satisfy the goal, and must report a violation
/// through `last` if there is one. Erasing `alpha · b` for the reported
/// `alpha` must leave a state that satisfies the goal on its domain.
pub trait ProblemInstance: Send + Sync {
    fn name(&self) -> &str;
    fn num_slots(&self) -> usize;
    fn monoid(&self) -> MonoidFamily;

    fn initial_word(&self) -> Word {
        let n = self.num_slots();
        match self.monoid() {
            MonoidFamily::Powerset => Word::from_letters((0..n).map(GeneratorId)),
            MonoidFamily::FreePower => Word::from_letters(std::iter::repeat_n(GeneratorId(0), n)),
        }
    }

    fn sample(&self, slot: usize, state: &PartialAssignment, rng: &mut DrawRng) -> Result<u32, SampleError>;
    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent>;
    /// True iff the filled slots violate nothing.
    fn goal(&self, state: &PartialAssignment) -> bool;
    fn condition_table(&self) -> LalConditionTable;
    fn weight(&self) -> WeightFunction;

    fn check_condition(&self) -> Result<SlackReport, ConditionError> {
        check_lal_inequality(&self.weight(), &self.condition_table())
    }
}

/// Kinds of violation; the derived order breaks ties between witnesses.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationClass {
    MonochromaticEdge,
    RepeatedBlock,
    RepetitivePath,
    AdjacentSameColor,
    #[serde(rename = "bichromatic-4-cycle")]
    Bichromatic4Cycle,
    BichromaticCycle,
    BlueTriangle,
    RedClique,
    ForbiddenChoice,
}

impl ViolationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationClass::MonochromaticEdge => "monochromatic-edge",
            ViolationClass::RepeatedBlock => "repeated-block",
            ViolationClass::RepetitivePath => "repetitive-path",
            ViolationClass::AdjacentSameColor => "adjacent-same-color",
            ViolationClass::Bichromatic4Cycle => "bichromatic-4-cycle",
            ViolationClass::BichromaticCycle => "bichromatic-cycle",
            ViolationClass::BlueTriangle => "blue-triangle",
            ViolationClass::RedClique => "red-clique",
            ViolationClass::ForbiddenChoice => "forbidden-choice",
        }
    }
}

/// A violation found by a detector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEvent {
    pub class: ViolationClass,
    /// Erased together with the popped letter.
    pub alpha: MonoidElement,
    /// The witness itself: a path, cycle, clique or block, in the
    /// instance's own terms.
    pub detail: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub letter: GeneratorId,
    pub slot: usize,
    pub value: u32,
    pub event: Option<WitnessEvent>,
    /// Word length after the step.
    pub word_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTrace {
    pub monoid: MonoidFamily,
    pub initial_word: Word,
    pub steps: Vec<TraceStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RunStatus {
    Terminated,
    BudgetExhausted,
    /// The sampler had no legal value for this slot.
    Stuck { slot: usize },
    /// The word emptied but the instance's goal predicate fails.
    GoalFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub status: RunStatus,
    pub terminated: bool,
    pub steps_used: u64,
    pub events_by_class: BTreeMap<String, u64>,
    pub final_state: PartialAssignment,
}

/// What a single step did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Filled(TraceStep),
    Stuck { slot: usize },
}

/// A run in progress, advanced one step at a time.
pub struct Run<'a, P: ProblemInstance + ?Sized> {
    instance: &'a P,
    rng: DrawRng,
    state: PartialAssignment,
    word: Word,
    family: MonoidFamily,
    steps: u64,
    events_by_class: BTreeMap<String, u64>,
}

impl<'a, P: ProblemInstance + ?Sized> Run<'a, P> {
    pub fn new(instance: &'a P, seed: u64) -> Self {
        Run {
            instance,
            rng: DrawRng::seed_from_u64(seed),
            state: PartialAssignment::empty(instance.num_slots()),
            word: instance.initial_word(),
            family: instance.monoid(),
            steps: 0,
            events_by_class: BTreeMap::new(),
        }
    }

    pub fn state(&self) -> &PartialAssignment {
        &self.state
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_done(&self) -> bool {
        self.word.is_empty()
    }

    /// Pops, fills, detects and repairs once. `None` when the word is empty.
    pub fn step(&mut self) -> Option<StepOutcome> {
        let letter = self.word.first()?;
        let slot = self
            .family
            .slot_for(letter, &self.state)
            .expect("word letter names an unfilled slot");
        let value = match self.instance.sample(slot, &self.state, &mut self.rng) {
            Ok(v) => v,
            Err(SampleError::NoLegalValue(_)) => return Some(StepOutcome::Stuck { slot }),
        };
        self.word.pop_front();
        self.state.set(slot, value);
        self.steps += 1;

        let event = self.instance.detect(&self.state, slot);
        if let Some(ev) = &event {
            let erase = ev
                .alpha
                .mul(&self.family.generator(letter).expect("letter of the instance's monoid"))
                .expect("witness element of the instance's monoid");
            let erased = erase.act_in_place(&mut self.state).expect("witness slots in range");
            assert_eq!(
                erased.len(),
                erase.canonical_len(),
                "witness {:?} names unfilled slots",
                ev.alpha
            );
            self.word.prepend(&erase.canonical_word());
            *self.events_by_class.entry(ev.class.as_str().to_owned()).or_insert(0) += 1;
        }
        Some(StepOutcome::Filled(TraceStep { letter, slot, value, event, word_len: self.word.len() }))
    }

    fn report(self, seed: u64, status: RunStatus) -> RunReport {
        RunReport {
            seed,
            terminated: status == RunStatus::Terminated,
            status,
            steps_used: self.steps,
            events_by_class: self.events_by_class,
            final_state: self.state,
        }
    }
}

fn drive<P: ProblemInstance + ?Sized>(
    instance: &P,
    seed: u64,
    budget: u64,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> RunReport {
    let mut run = Run::new(instance, seed);
    let status = loop {
        if run.is_done() {
            break if instance.goal(run.state()) && run.state().is_total() {
                RunStatus::Terminated
            } else {
                RunStatus::GoalFailed
            };
        }
        if run.steps() >= budget {
            break RunStatus::BudgetExhausted;
        }
        match run.step() {
            Some(StepOutcome::Filled(step)) => {
                if let Some(t) = trace.as_deref_mut() {
                    t.push(step);
                }
            }
            Some(StepOutcome::Stuck { slot }) => break RunStatus::Stuck { slot },
            None => unreachable!("word checked non-empty"),
        }
    };
    run.report(seed, status)
}

/// Runs to termination or `budget` steps, recording every step.
pub fn run<P: ProblemInstance + ?Sized>(instance: &P, seed: u64, budget: u64) -> (RunReport, RunTrace) {
    let mut steps = Vec::new();
    let report = drive(instance, seed, budget, Some(&mut steps));
    let trace = RunTrace { monoid: instance.monoid(), initial_word: instance.initial_word(), steps };
    (report, trace)
}

/// [`run`] without keeping the trace.
pub fn run_report<P: ProblemInstance + ?Sized>(instance: &P, seed: u64, budget: u64) -> RunReport {
    drive(instance, seed, budget, None)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub runs: u64,
    pub terminated: u64,
    pub success_rate: f64,
    pub mean_steps: f64,
    pub max_steps: u64,
    pub events_by_class: BTreeMap<String, u64>,
}

impl RunSummary {
    /// Aggregates built from sums and maxima only, so the seed order does
    /// not matter.
    pub fn from_reports(reports: &[RunReport]) -> Self {
        let runs = reports.len() as u64;
        let terminated = reports.iter().filter(|r| r.terminated).count() as u64;
        let total_steps: u128 = reports.iter().map(|r| r.steps_used as u128).sum();
        let mut events_by_class = BTreeMap::new();
        for r in reports {
            for (class, count) in &r.events_by_class {
                *events_by_class.entry(class.clone()).or_insert(0) += count;
            }
        }
        RunSummary {
            runs,
            terminated,
            success_rate: if runs == 0 { 0.0 } else { terminated as f64 / runs as f64 },
            mean_steps: if runs == 0 { 0.0 } else { total_steps as f64 / runs as f64 },
            max_steps: reports.iter().map(|r| r.steps_used).max().unwrap_or(0),
            events_by_class,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManyRuns {
    pub reports: Vec<RunReport>,
    pub summary: RunSummary,
}

/// Independent runs over `seeds` in parallel; reports come back in seed-list
/// order.
pub fn run_many<P: ProblemInstance + ?Sized>(instance: &P, seeds: &[u64], budget: u64) -> ManyRuns {
    let reports: Vec<RunReport> = seeds.par_iter().map(|&s| run_report(instance, s, budget)).collect();
    let summary = RunSummary::from_reports(&reports);
    ManyRuns { reports, summary }
}
