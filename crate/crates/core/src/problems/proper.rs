//! Proper vertex coloring; a clash retries the vertex.

use super::{Graph, ProblemError};
use crate::condition::presets::proper_rows;
use crate::condition::{LalConditionTable, PresetParams};
use crate::engine::{ProblemInstance, SampleError, ViolationClass, WitnessEvent};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction};
use crate::rng::DrawRng;

#[derive(Clone, Debug)]
pub struct ProperColoring {
    graph: Graph,
    colors: u32,
    weight: f64,
}

impl ProperColoring {
    /// Fewer than `max_degree + 1` colors is allowed; the condition check
    /// then reports the failure.
    pub fn new(graph: Graph, colors: u32) -> Result<Self, ProblemError> {
        if colors == 0 {
            return Err(ProblemError::InvalidParameter("at least one color is needed".into()));
        }
        let delta = graph.max_degree() as u32;
        let weight = PresetParams::Proper { delta, colors }.evaluate()?.weight;
        Ok(ProperColoring { graph, colors, weight })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

impl ProblemInstance for ProperColoring {
    fn name(&self) -> &str {
        "proper"
    }

    fn num_slots(&self) -> usize {
        self.graph.n()
    }

    fn monoid(&self) -> MonoidFamily {
        MonoidFamily::Powerset
    }

    fn sample(&self, _: usize, _: &PartialAssignment, rng: &mut DrawRng) -> Result<u32, SampleError> {
        Ok(rng.below(self.colors as u64) as u32)
    }

    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent> {
        let c = state.get(last)?;
        let w = self.graph.neighbors(last).find(|&w| state.get(w) == Some(c))?;
        Some(WitnessEvent {
            class: ViolationClass::MonochromaticEdge,
            alpha: MonoidElement::powerset([]),
            detail: vec![last.min(w), last.max(w)],
        })
    }

    fn goal(&self, state: &PartialAssignment) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|&(a, b)| state.get(a).is_none() || state.get(a) != state.get(b))
    }

    fn condition_table(&self) -> LalConditionTable {
        let delta = self.graph.max_degree() as u32;
        let mut table = LalConditionTable::new(MonoidFamily::Powerset);
        for v in 0..self.graph.n() {
            table.push(GeneratorId(v), proper_rows(delta, self.colors));
        }
        table
    }

    fn weight(&self) -> WeightFunction {
        WeightFunction::uniform(self.graph.n(), self.weight).expect("weight is positive")
    }
}
