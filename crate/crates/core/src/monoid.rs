//! Monoid words, the two monoid families the solvers act with, and
//! word-evolution replay.
//!
//! Two families are supported:
//!
//! * [`MonoidFamily::Powerset`]: subsets of slot ids under union. The
//!   generators are the singletons, identified with the slot ids, and a set
//!   `S` acts on a [`PartialAssignment`] by erasing every slot in `S`.
//! * [`MonoidFamily::FreePower`]: the free monoid on one generator `b`.
//!   `b^t` acts on a prefix-shaped assignment by erasing its last `t` filled
//!   positions.
//!
//! In both families the infimum defining the weight functional is attained
//! at the obvious factorization, so [`MonoidElement::canonical_word`] is the
//! only preimage ever needed.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::RunTrace;

/// Replays refuse to grow a word past this many letters.
pub const DEFAULT_MAX_WORD_LEN: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonoidError {
    #[error("no weight defined for generator {0}")]
    UndefinedWeight(GeneratorId),
    #[error("weight of generator {generator} must be positive and finite, got {value}")]
    NonPositiveWeight { generator: GeneratorId, value: f64 },
    #[error("cannot pop a letter from the empty word")]
    EmptyWord,
    #[error("word length {len} exceeds the cap of {cap} letters")]
    WordTooLong { len: usize, cap: usize },
    #[error("cannot combine elements of different monoid families")]
    FamilyMismatch,
    #[error("generator {0} does not belong to the {1} monoid")]
    UnknownGenerator(GeneratorId, MonoidFamily),
    #[error("slot {slot} is out of range for an assignment of {len} slots")]
    SlotOutOfRange { slot: usize, len: usize },
}

/// Label of a generator. For the powerset family this is the slot id; the
/// free family has the single generator `0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorId(pub usize);

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoidFamily {
    Powerset,
    FreePower,
}

impl fmt::Display for MonoidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidFamily::Powerset => f.write_str("powerset"),
            MonoidFamily::FreePower => f.write_str("free-power"),
        }
    }
}

impl MonoidFamily {
    pub fn identity(self) -> MonoidElement {
        match self {
            MonoidFamily::Powerset => MonoidElement::Powerset(BTreeSet::new()),
            MonoidFamily::FreePower => MonoidElement::FreePower(0),
        }
    }

    /// The monoid element a single letter maps to.
    pub fn generator(self, id: GeneratorId) -> Result<MonoidElement, MonoidError> {
        match self {
            MonoidFamily::Powerset => Ok(MonoidElement::Powerset(BTreeSet::from([id.0]))),
            MonoidFamily::FreePower if id.0 == 0 => Ok(MonoidElement::FreePower(1)),
            MonoidFamily::FreePower => Err(MonoidError::UnknownGenerator(id, self)),
        }
    }

    /// The canonical homomorphism from words to monoid elements.
    pub fn tau(self, word: &Word) -> Result<MonoidElement, MonoidError> {
        match self {
            MonoidFamily::Powerset => Ok(MonoidElement::Powerset(
                word.letters().map(|g| g.0).collect(),
            )),
            MonoidFamily::FreePower => {
                if let Some(bad) = word.letters().find(|g| g.0 != 0) {
                    return Err(MonoidError::UnknownGenerator(bad, self));
                }
                Ok(MonoidElement::FreePower(word.len() as u64))
            }
        }
    }

    /// Slot that popping `letter` frees up in `state`.
    ///
    /// Powerset letters name their slot directly. The free generator always
    /// refers to the first unfilled position of a prefix.
    pub fn slot_for(self, letter: GeneratorId, state: &PartialAssignment) -> Option<usize> {
        match self {
            MonoidFamily::Powerset => (letter.0 < state.len()).then_some(letter.0),
            MonoidFamily::FreePower => state.first_unfilled(),
        }
    }
}

/// An element of one of the two monoid families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidElement {
    Powerset(BTreeSet<usize>),
    FreePower(u64),
}

impl MonoidElement {
    pub fn powerset<I: IntoIterator<Item = usize>>(slots: I) -> Self {
        MonoidElement::Powerset(slots.into_iter().collect())
    }

    pub fn free_power(exponent: u64) -> Self {
        MonoidElement::FreePower(exponent)
    }

    pub fn family(&self) -> MonoidFamily {
        match self {
            MonoidElement::Powerset(_) => MonoidFamily::Powerset,
            MonoidElement::FreePower(_) => MonoidFamily::FreePower,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            MonoidElement::Powerset(s) => s.is_empty(),
            MonoidElement::FreePower(t) => *t == 0,
        }
    }

    /// Number of letters in the canonical factorization.
    pub fn canonical_len(&self) -> usize {
        match self {
            MonoidElement::Powerset(s) => s.len(),
            MonoidElement::FreePower(t) => *t as usize,
        }
    }

    /// Monoid product `self · other`. The identity of either family is
    /// accepted as the identity of the other.
    pub fn mul(&self, other: &MonoidElement) -> Result<MonoidElement, MonoidError> {
        match (self, other) {
            (MonoidElement::Powerset(a), MonoidElement::Powerset(b)) => {
                Ok(MonoidElement::Powerset(a.union(b).copied().collect()))
            }
            (MonoidElement::FreePower(a), MonoidElement::FreePower(b)) => {
                Ok(MonoidElement::FreePower(a + b))
            }
            (a, b) if a.is_identity() => Ok(b.clone()),
            (a, b) if b.is_identity() => Ok(a.clone()),
            _ => Err(MonoidError::FamilyMismatch),
        }
    }

    /// The canonical preimage under `tau`: the sorted slot list for a set,
    /// `b^t` for a free power.
    pub fn canonical_word(&self) -> Word {
        match self {
            MonoidElement::Powerset(s) => Word::from_letters(s.iter().map(|&v| GeneratorId(v))),
            MonoidElement::FreePower(t) => {
                Word::from_letters(std::iter::repeat_n(GeneratorId(0), *t as usize))
            }
        }
    }

    /// Applies the erasure action in place and returns the slots that were
    /// actually cleared, in ascending order.
    pub fn act_in_place(&self, x: &mut PartialAssignment) -> Result<Vec<usize>, MonoidError> {
        match self {
            MonoidElement::Powerset(s) => {
                let mut erased = Vec::new();
                for &slot in s {
                    if slot >= x.len() {
                        return Err(MonoidError::SlotOutOfRange { slot, len: x.len() });
                    }
                    if x.values[slot].take().is_some() {
                        erased.push(slot);
                    }
                }
                Ok(erased)
            }
            MonoidElement::FreePower(t) => {
                let mut erased = Vec::new();
                let mut remaining = *t;
                for slot in (0..x.len()).rev() {
                    if remaining == 0 {
                        break;
                    }
                    if x.values[slot].take().is_some() {
                        erased.push(slot);
                        remaining -= 1;
                    }
                }
                erased.reverse();
                Ok(erased)
            }
        }
    }

    pub fn act(&self, x: &PartialAssignment) -> Result<PartialAssignment, MonoidError> {
        let mut y = x.clone();
        self.act_in_place(&mut y)?;
        Ok(y)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Powerset(s) => {
                f.write_str("{")?;
                for (i, v) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
            MonoidElement::FreePower(t) => write!(f, "b^{t}"),
        }
    }
}

/// A finite word over the generators; the empty word is the identity.
///
/// Letters are stored back to front so popping the first letter and
/// prepending a block are both cheap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<GeneratorId>", into = "Vec<GeneratorId>")]
pub struct Word {
    reversed: Vec<GeneratorId>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = GeneratorId>>(letters: I) -> Self {
        let mut reversed: Vec<GeneratorId> = letters.into_iter().collect();
        reversed.reverse();
        Word { reversed }
    }

    pub fn len(&self) -> usize {
        self.reversed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reversed.is_empty()
    }

    /// Letters in reading order.
    pub fn letters(&self) -> impl DoubleEndedIterator<Item = GeneratorId> + ExactSizeIterator + '_ {
        self.reversed.iter().rev().copied()
    }

    pub fn first(&self) -> Option<GeneratorId> {
        self.reversed.last().copied()
    }

    pub fn pop_front(&mut self) -> Option<GeneratorId> {
        self.reversed.pop()
    }

    /// Replaces `self` by `prefix · self`.
    pub fn prepend(&mut self, prefix: &Word) {
        self.reversed.extend_from_slice(&prefix.reversed);
    }
}

impl From<Vec<GeneratorId>> for Word {
    fn from(letters: Vec<GeneratorId>) -> Self {
        Word::from_letters(letters)
    }
}

impl From<Word> for Vec<GeneratorId> {
    fn from(w: Word) -> Self {
        w.letters().collect()
    }
}

/// Map from slots to optional values: the state space every solver works in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartialAssignment {
    values: Vec<Option<u32>>,
}

impl PartialAssignment {
    /// The nowhere-defined assignment on `slots` slots.
    pub fn empty(slots: usize) -> Self {
        PartialAssignment { values: vec![None; slots] }
    }

    pub fn from_values(values: Vec<Option<u32>>) -> Self {
        PartialAssignment { values }
    }

    pub fn total(values: &[u32]) -> Self {
        PartialAssignment { values: values.iter().map(|&v| Some(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, slot: usize) -> Option<u32> {
        self.values.get(slot).copied().flatten()
    }

    pub fn set(&mut self, slot: usize, value: u32) {
        self.values[slot] = Some(value);
    }

    pub fn clear(&mut self, slot: usize) {
        self.values[slot] = None;
    }

    pub fn values(&self) -> &[Option<u32>] {
        &self.values
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn filled_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn first_unfilled(&self) -> Option<usize> {
        self.values.iter().position(Option::is_none)
    }

    /// Slots that carry a value.
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter_map(|(i, v)| v.map(|_| i))
    }

    /// Values of a total assignment, `None` if some slot is unfilled.
    pub fn to_total(&self) -> Option<Vec<u32>> {
        self.values.iter().copied().collect()
    }
}

/// Positive weights on the generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightFunction {
    values: Vec<f64>,
}

impl WeightFunction {
    pub fn new(values: Vec<f64>) -> Result<Self, MonoidError> {
        for (i, &value) in values.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(MonoidError::NonPositiveWeight { generator: GeneratorId(i), value });
            }
        }
        Ok(WeightFunction { values })
    }

    pub fn uniform(generators: usize, value: f64) -> Result<Self, MonoidError> {
        WeightFunction::new(vec![value; generators])
    }

    pub fn get(&self, generator: GeneratorId) -> Result<f64, MonoidError> {
        self.values
            .get(generator.0)
            .copied()
            .ok_or(MonoidError::UndefinedWeight(generator))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl TryFrom<Vec<f64>> for WeightFunction {
    type Error = MonoidError;
    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        WeightFunction::new(values)
    }
}

impl From<WeightFunction> for Vec<f64> {
    fn from(w: WeightFunction) -> Self {
        w.values
    }
}

/// Infimum of the weight product over all factorizations of `alpha`.
///
/// A set multiplies the weights of its slots, `b^t` gives `f(b)^t`, and the
/// identity gives 1.
pub fn underline_f(alpha: &MonoidElement, f: &WeightFunction) -> Result<f64, MonoidError> {
    match alpha {
        MonoidElement::Powerset(s) => s
            .iter()
            .try_fold(1.0, |acc, &v| Ok(acc * f.get(GeneratorId(v))?)),
        MonoidElement::FreePower(0) => Ok(1.0),
        MonoidElement::FreePower(t) => {
            let base = f.get(GeneratorId(0))?;
            Ok(base.powi(i32::try_from(*t).unwrap_or(i32::MAX)))
        }
    }
}

/// One step of an execution log: either the popped letter was absorbed
/// cleanly, or a witness `alpha` was emitted for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplayEvent {
    Skip,
    Witness(MonoidElement),
}

/// Applies one step to `word`: pops its first letter `b`, then on a witness
/// `alpha` prepends the canonical word of `alpha · b`. Returns the popped
/// letter.
pub fn replay_step(
    family: MonoidFamily,
    word: &mut Word,
    event: &ReplayEvent,
    max_len: usize,
) -> Result<GeneratorId, MonoidError> {
    let beta = word.pop_front().ok_or(MonoidError::EmptyWord)?;
    if let ReplayEvent::Witness(alpha) = event {
        let product = alpha.mul(&family.generator(beta)?)?;
        let prefix = product.canonical_word();
        let len = word.len() + prefix.len();
        if len > max_len {
            return Err(MonoidError::WordTooLong { len, cap: max_len });
        }
        word.prepend(&prefix);
    }
    Ok(beta)
}

/// Runs the word evolution of an admissible pair from `w0` and returns the
/// final word.
pub fn replay_word_evolution(
    family: MonoidFamily,
    w0: &Word,
    events: &[ReplayEvent],
) -> Result<Word, MonoidError> {
    let mut word = w0.clone();
    for event in events {
        replay_step(family, &mut word, event, DEFAULT_MAX_WORD_LEN)?;
    }
    Ok(word)
}

/// Checks that replaying the trace's events from `w0` pops the recorded
/// letters and reproduces every recorded word length.
pub fn trace_decodes(trace: &RunTrace, w0: &Word) -> bool {
    let mut word = w0.clone();
    for step in &trace.steps {
        let event = match &step.event {
            Some(ev) => ReplayEvent::Witness(ev.alpha.clone()),
            None => ReplayEvent::Skip,
        };
        match replay_step(trace.monoid, &mut word, &event, DEFAULT_MAX_WORD_LEN) {
            Ok(letter) if letter == step.letter && word.len() == step.word_len => {}
            _ => return false,
        }
    }
    true
}
