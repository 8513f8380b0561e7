//! Randomized search driven by monoid actions on partial assignments.
//!
//! * [`monoid`]: words, monoid elements, the erasure action and trace
//!   replay.
//! * [`condition`]: weight inequalities, series fixpoints and the closed-form
//!   thresholds.
//! * [`engine`]: the resampling loop.
//! * [`problems`]: the concrete solvers.
//! * [`validate`]: independent checkers and brute-force oracles.

pub mod condition;
pub mod engine;
pub mod monoid;
pub mod problems;
pub mod rng;
pub mod validate;

pub use engine::{run, run_many, ProblemInstance, RunReport, RunTrace, WitnessEvent};
pub use monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction, Word};
