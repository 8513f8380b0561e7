//! The concrete solvers and a serializable description of each.

mod acyclic;
mod choice;
mod graph;
mod nonrep_color;
mod nonrep_seq;
mod proper;
mod ramsey;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condition::ConditionError;
use crate::engine::ProblemInstance;

pub use crate::condition::AcyclicStrategy;
pub use acyclic::AcyclicEdgeColoring;
pub use choice::{ChoiceFunction, ChoiceSystem};
pub use graph::{Graph, GraphError};
pub use nonrep_color::{NonrepColoring, DEFAULT_MAX_HALF_LENGTH};
pub use nonrep_seq::{ListSystem, NonrepSequence};
pub use proper::ProperColoring;
pub use ramsey::{RamseyColoring, BLUE, RED};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("weight condition fails (minimum slack {min_slack})")]
    ConditionUnsatisfiable { min_slack: f64 },
    #[error("marginals of block {0} do not form a sub-distribution with positive mass")]
    InvalidMarginals(usize),
}

fn default_max_half_length() -> usize {
    DEFAULT_MAX_HALF_LENGTH
}

/// Everything needed to rebuild an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum ProblemSpec {
    Proper {
        graph: Graph,
        colors: u32,
    },
    NonrepSeq {
        lists: ListSystem,
    },
    NonrepColor {
        graph: Graph,
        colors: u32,
        #[serde(default = "default_max_half_length")]
        max_half_length: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y: Option<f64>,
    },
    Acyclic {
        graph: Graph,
        colors: u32,
        #[serde(default)]
        strategy: AcyclicStrategy,
    },
    Ramsey {
        n: usize,
        k: usize,
        /// Blue probability; the certificate's value when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
    },
    Choice {
        system: ChoiceSystem,
    },
}

impl ProblemSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            ProblemSpec::Proper { .. } => "proper",
            ProblemSpec::NonrepSeq { .. } => "nonrep-seq",
            ProblemSpec::NonrepColor { .. } => "nonrep-color",
            ProblemSpec::Acyclic { .. } => "acyclic",
            ProblemSpec::Ramsey { .. } => "ramsey",
            ProblemSpec::Choice { .. } => "choice",
        }
    }

    pub fn build(&self) -> Result<Box<dyn ProblemInstance>, ProblemError> {
        Ok(match self {
            ProblemSpec::Proper { graph, colors } => Box::new(ProperColoring::new(graph.clone(), *colors)?),
            ProblemSpec::NonrepSeq { lists } => Box::new(NonrepSequence::new(lists.clone())?),
            ProblemSpec::NonrepColor { graph, colors, max_half_length, y } => {
                Box::new(NonrepColoring::new(graph.clone(), *colors, *max_half_length, *y)?)
            }
            ProblemSpec::Acyclic { graph, colors, strategy } => {
                Box::new(AcyclicEdgeColoring::new(graph.clone(), *colors, *strategy)?)
            }
            ProblemSpec::Ramsey { n, k, p: None } => Box::new(RamseyColoring::certified(*n, *k)?),
            ProblemSpec::Ramsey { n, k, p: Some(p) } => Box::new(RamseyColoring::new(*n, *k, *p)?),
            ProblemSpec::Choice { system } => Box::new(ChoiceFunction::new(system.clone())?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json_round_trip() {
        let specs = [
            ProblemSpec::Proper { graph: Graph::petersen(), colors: 4 },
            ProblemSpec::NonrepSeq { lists: ListSystem::uniform(3, 4) },
            ProblemSpec::NonrepColor { graph: Graph::path(4), colors: 5, max_half_length: 8, y: None },
            ProblemSpec::Acyclic { graph: Graph::complete(4), colors: 8, strategy: AcyclicStrategy::Uniform },
            ProblemSpec::Ramsey { n: 5, k: 6, p: None },
            ProblemSpec::Choice { system: ChoiceSystem::graph_coloring(&Graph::path(2), 4, 0.5) },
        ];
        for spec in specs {
            let json = serde_json::to_string(&spec).unwrap();
            assert!(json.contains(&format!("\"problem\":\"{}\"", spec.tag())));
            let back: ProblemSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.build().unwrap().name(), spec.tag());
        }
    }

    #[test]
    fn defaults_fill_in() {
        let spec: ProblemSpec =
            serde_json::from_str(r#"{"problem":"acyclic","graph":{"n":2,"edges":[[0,1]]},"colors":3}"#).unwrap();
        assert!(matches!(spec, ProblemSpec::Acyclic { strategy: AcyclicStrategy::Restricted, .. }));
    }
}
