//! Experiment configuration and the report document `solve` writes.

use std::path::PathBuf;

use lalkit::engine::{RunReport, RunSummary};
use lalkit::problems::ProblemSpec;
use lalkit::validate::Violation;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Seeds {
    List(Vec<u64>),
    Range { count: u64, base: u64 },
}

impl Seeds {
    pub fn expand(&self) -> Vec<u64> {
        match self {
            Seeds::List(seeds) => seeds.clone(),
            Seeds::Range { count, base } => (0..*count).map(|i| base.wrapping_add(i)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instance: ProblemSpec,
    pub seeds: Seeds,
    pub budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    #[serde(flatten)]
    pub report: RunReport,
    /// True iff the run terminated and the independent checker found
    /// nothing.
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub config: ExperimentConfig,
    pub summary: RunSummary,
    pub runs: Vec<SolveRecord>,
}
