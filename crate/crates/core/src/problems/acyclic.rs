//! Acyclic edge coloring: proper, and no cycle uses only two colors.
//!
//! A two-colored cycle `e_0 e_1 ... e_{2t-1}` through the newest edge
//! `e = e_0` (listed in walking order from `e`'s second endpoint) with
//! `2t >= 6` erases every cycle edge except `e_{t-1}` and `e_t`, the
//! adjacent pair opposite `e`.

use super::{Graph, ProblemError};
use crate::condition::presets::acyclic_rows;
use crate::condition::{AcyclicStrategy, LalConditionTable, PresetParams};
use crate::engine::{ProblemInstance, SampleError, ViolationClass, WitnessEvent};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction};
use crate::rng::DrawRng;

#[derive(Clone, Debug)]
pub struct AcyclicEdgeColoring {
    graph: Graph,
    colors: u32,
    strategy: AcyclicStrategy,
    weight: f64,
}

impl AcyclicEdgeColoring {
    pub fn new(graph: Graph, colors: u32, strategy: AcyclicStrategy) -> Result<Self, ProblemError> {
        if colors == 0 {
            return Err(ProblemError::InvalidParameter("at least one color is needed".into()));
        }
        let delta = graph.max_degree() as u32;
        let weight = PresetParams::Acyclic { delta, colors, strategy }.evaluate()?.weight;
        Ok(AcyclicEdgeColoring { graph, colors, strategy, weight })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn strategy(&self) -> AcyclicStrategy {
        self.strategy
    }

    /// The edge at `x` colored `c`, other than `skip`.
    fn edge_with_color(&self, state: &PartialAssignment, x: usize, c: u32, skip: usize) -> Option<(usize, usize)> {
        self.graph
            .incident(x)
            .iter()
            .copied()
            .find(|&(_, id)| id != skip && state.get(id) == Some(c))
    }

    /// Colors `e` may take without a clash at either endpoint or a
    /// two-colored 4-cycle.
    pub fn legal_colors(&self, state: &PartialAssignment, e: usize) -> Vec<u32> {
        let (u, v) = self.graph.edge(e);
        let mut allowed = vec![true; self.colors as usize];
        for x in [u, v] {
            for &(_, id) in self.graph.incident(x) {
                if let Some(c) = state.get(id).filter(|_| id != e) {
                    allowed[c as usize] = false;
                }
            }
        }
        // 4-cycles u v w x: edges vw and xu share a color, wx carries the
        // color e would need.
        for &(w, vw) in self.graph.incident(v) {
            let Some(c_vw) = state.get(vw).filter(|_| w != u) else { continue };
            for &(x, wx) in self.graph.incident(w) {
                if x == v || x == u {
                    continue;
                }
                let (Some(c_wx), Some(xu)) = (state.get(wx), self.graph.edge_between(x, u)) else { continue };
                if state.get(xu) == Some(c_vw) {
                    allowed[c_wx as usize] = false;
                }
            }
        }
        (0..self.colors).filter(|&c| allowed[c as usize]).collect()
    }

    /// Cycles through `e` alternating its color with `other`, walking from
    /// `e`'s second endpoint. Returns the cycle edges `e_0 = e, e_1, ...`.
    fn two_colored_cycle(&self, state: &PartialAssignment, e: usize, other: u32) -> Option<Vec<usize>> {
        let (u, v) = self.graph.edge(e);
        let c1 = state.get(e)?;
        let mut cycle = vec![e];
        let (mut at, mut via, mut want) = (v, e, other);
        for _ in 0..self.graph.num_edges() {
            let (next, id) = self.edge_with_color(state, at, want, via)?;
            cycle.push(id);
            if next == u {
                return (want == other).then_some(cycle);
            }
            (at, via) = (next, id);
            want = if want == other { c1 } else { other };
        }
        None
    }
}

impl ProblemInstance for AcyclicEdgeColoring {
    fn name(&self) -> &str {
        "acyclic"
    }

    fn num_slots(&self) -> usize {
        self.graph.num_edges()
    }

    fn monoid(&self) -> MonoidFamily {
        MonoidFamily::Powerset
    }

    fn sample(&self, slot: usize, state: &PartialAssignment, rng: &mut DrawRng) -> Result<u32, SampleError> {
        match self.strategy {
            AcyclicStrategy::Uniform => Ok(rng.below(self.colors as u64) as u32),
            AcyclicStrategy::Restricted => {
                let legal = self.legal_colors(state, slot);
                if legal.is_empty() {
                    return Err(SampleError::NoLegalValue(slot));
                }
                Ok(legal[rng.below(legal.len() as u64) as usize])
            }
        }
    }

    /// A clash with an adjacent edge first, then the two-colored cycle with
    /// the smallest class and erase set.
    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent> {
        let c1 = state.get(last)?;
        let (u, v) = self.graph.edge(last);
        let clash = [u, v]
            .into_iter()
            .filter_map(|x| self.edge_with_color(state, x, c1, last).map(|(_, id)| id))
            .min();
        if let Some(f) = clash {
            return Some(WitnessEvent {
                class: ViolationClass::AdjacentSameColor,
                alpha: MonoidElement::powerset([]),
                detail: vec![last.min(f), last.max(f)],
            });
        }
        let mut best: Option<(ViolationClass, Vec<usize>, Vec<usize>)> = None;
        let mut others: Vec<u32> = self
            .graph
            .incident(v)
            .iter()
            .filter_map(|&(_, id)| state.get(id).filter(|&c| id != last && c != c1))
            .collect();
        others.sort_unstable();
        others.dedup();
        for c2 in others {
            let Some(cycle) = self.two_colored_cycle(state, last, c2) else { continue };
            let (class, mut erase) = if cycle.len() == 4 {
                (ViolationClass::Bichromatic4Cycle, Vec::new())
            } else {
                let t = cycle.len() / 2;
                let kept = [cycle[t - 1], cycle[t]];
                (ViolationClass::BichromaticCycle, cycle.iter().copied().filter(|id| !kept.contains(id)).collect())
            };
            erase.sort_unstable();
            let candidate = (class, erase, cycle);
            if best.as_ref().is_none_or(|b| (candidate.0, &candidate.1) < (b.0, &b.1)) {
                best = Some(candidate);
            }
        }
        best.map(|(class, erase, cycle)| WitnessEvent { class, alpha: MonoidElement::powerset(erase), detail: cycle })
    }

    fn goal(&self, state: &PartialAssignment) -> bool {
        state.domain().all(|e| self.detect(state, e).is_none())
    }

    fn condition_table(&self) -> LalConditionTable {
        let delta = self.graph.max_degree() as u32;
        let mut table = LalConditionTable::new(MonoidFamily::Powerset);
        for e in 0..self.graph.num_edges() {
            table.push(GeneratorId(e), acyclic_rows(delta, self.colors, self.strategy));
        }
        table
    }

    fn weight(&self) -> WeightFunction {
        WeightFunction::uniform(self.graph.num_edges(), self.weight).expect("weight is positive")
    }
}
