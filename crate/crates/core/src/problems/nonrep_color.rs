//! Vertex colorings with no repetitively colored path.
//!
//! A path `a_1 ... a_{2t}` is repetitive when `c(a_i) = c(a_{t+i})` for all
//! `i <= t`. A repetitive path through the newest vertex `v` erases the half
//! that contains `v`.

use super::{Graph, ProblemError};
use crate::condition::presets::nonrep_coloring_rows;
use crate::condition::{LalConditionTable, PresetParams};
use crate::engine::{ProblemInstance, SampleError, ViolationClass, WitnessEvent};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction};
use crate::rng::DrawRng;

pub const DEFAULT_MAX_HALF_LENGTH: usize = 8;

#[derive(Clone, Debug)]
pub struct NonrepColoring {
    graph: Graph,
    colors: u32,
    max_half_length: usize,
    weight: f64,
}

impl NonrepColoring {
    /// `y` overrides the default substitution `1 - (2/delta)^{1/3}` used for
    /// the weight. Witness paths are searched up to `2 * max_half_length`
    /// vertices.
    pub fn new(graph: Graph, colors: u32, max_half_length: usize, y: Option<f64>) -> Result<Self, ProblemError> {
        if colors == 0 || max_half_length == 0 {
            return Err(ProblemError::InvalidParameter("colors and max_half_length must be positive".into()));
        }
        let delta = graph.max_degree() as u32;
        let weight = PresetParams::NonrepColor { delta, colors, y }.evaluate()?.weight;
        Ok(NonrepColoring { graph, colors, max_half_length, weight })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn max_half_length(&self) -> usize {
        self.max_half_length
    }
}

struct Search<'a> {
    graph: &'a Graph,
    state: &'a PartialAssignment,
    max_half: usize,
    on_path: Vec<bool>,
    best: Option<(Vec<usize>, Vec<usize>)>,
}

impl Search<'_> {
    fn color(&self, v: usize) -> u32 {
        self.state.get(v).expect("path vertices are colored")
    }

    /// Every simple path from `from` through colored vertices with at most
    /// `max_len` vertices after `from`, each reported as its vertex list
    /// after `from`.
    fn arms(&mut self, from: usize, max_len: usize, arm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(arm.clone());
        if arm.len() == max_len {
            return;
        }
        let tip = arm.last().copied().unwrap_or(from);
        for &(w, _) in self.graph.incident(tip) {
            if !self.on_path[w] && self.state.get(w).is_some() {
                self.on_path[w] = true;
                arm.push(w);
                self.arms(from, max_len, arm, out);
                arm.pop();
                self.on_path[w] = false;
            }
        }
    }

    /// Extends `path` to `2t` vertices so that it stays repetitive.
    fn extend_right(&mut self, path: &mut Vec<usize>, t: usize, v_pos: usize) {
        if path.len() == 2 * t {
            self.offer(path, t, v_pos);
            return;
        }
        let pos = path.len();
        let tip = path[pos - 1];
        for &(w, _) in self.graph.incident(tip) {
            if self.on_path[w] || self.state.get(w).is_none() {
                continue;
            }
            if pos >= t && self.color(w) != self.color(path[pos - t]) {
                continue;
            }
            self.on_path[w] = true;
            path.push(w);
            self.extend_right(path, t, v_pos);
            path.pop();
            self.on_path[w] = false;
        }
    }

    fn offer(&mut self, path: &[usize], t: usize, v_pos: usize) {
        let half = if v_pos < t { &path[..t] } else { &path[t..] };
        let mut erase = half.to_vec();
        erase.sort_unstable();
        let mut oriented = path.to_vec();
        if oriented[0] > oriented[oriented.len() - 1] {
            oriented.reverse();
        }
        let candidate = (erase, oriented);
        if self.best.as_ref().is_none_or(|b| candidate < *b) {
            self.best = Some(candidate);
        }
    }
}

impl NonrepColoring {
    fn witness_through(&self, state: &PartialAssignment, v: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        state.get(v)?;
        let n = self.graph.n();
        let mut search = Search { graph: &self.graph, state, max_half: self.max_half_length, on_path: vec![false; n], best: None };
        search.on_path[v] = true;
        let mut left_arms = Vec::new();
        search.arms(v, 2 * search.max_half - 1, &mut Vec::new(), &mut left_arms);
        for left in left_arms {
            let a = left.len();
            // path = reverse(left), v, ...
            let mut path: Vec<usize> = left.iter().rev().copied().collect();
            path.push(v);
            for &w in &left {
                search.on_path[w] = true;
            }
            for t in (a / 2 + 1)..=search.max_half {
                let consistent = (t..path.len()).all(|k| search.color(path[k]) == search.color(path[k - t]));
                if consistent {
                    search.extend_right(&mut path, t, a);
                }
            }
            for &w in &left {
                search.on_path[w] = false;
            }
        }
        search.best
    }
}

impl ProblemInstance for NonrepColoring {
    fn name(&self) -> &str {
        "nonrep-color"
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

    /// The witness whose erased half is lexicographically smallest, ties
    /// broken by the path itself.
    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent> {
        let (half, path) = self.witness_through(state, last)?;
        Some(WitnessEvent {
            class: ViolationClass::RepetitivePath,
            alpha: MonoidElement::powerset(half),
            detail: path,
        })
    }

    fn goal(&self, state: &PartialAssignment) -> bool {
        state.domain().all(|v| self.witness_through(state, v).is_none())
    }

    fn condition_table(&self) -> LalConditionTable {
        let delta = self.graph.max_degree() as u32;
        let mut table = LalConditionTable::new(MonoidFamily::Powerset);
        for v in 0..self.graph.n() {
            table.push(GeneratorId(v), nonrep_coloring_rows(delta, self.colors));
        }
        table
    }

    fn weight(&self) -> WeightFunction {
        WeightFunction::uniform(self.graph.n(), self.weight).expect("weight is positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::nonrep_color_threshold;
    use crate::engine::{run, DEFAULT_BUDGET};

    fn colored(values: &[u32]) -> PartialAssignment {
        PartialAssignment::total(values)
    }

    #[test]
    fn path_0101_has_witness() {
        let inst = NonrepColoring::new(Graph::path(4), 4, 4, None).unwrap();
        let ev = inst.detect(&colored(&[0, 1, 0, 1]), 3).unwrap();
        assert_eq!(ev.detail, vec![0, 1, 2, 3]);
        assert_eq!(ev.alpha, MonoidElement::powerset([2, 3]));
    }

    #[test]
    fn path_010_is_fine() {
        let inst = NonrepColoring::new(Graph::path(3), 4, 4, None).unwrap();
        assert!(inst.goal(&colored(&[0, 1, 0])));
    }

    #[test]
    fn star_example_is_fine() {
        let inst = NonrepColoring::new(Graph::star(3), 4, 4, None).unwrap();
        assert!(inst.goal(&colored(&[0, 1, 1, 2])));
    }

    #[test]
    fn adjacent_equal_colors_retry_vertex() {
        let inst = NonrepColoring::new(Graph::path(3), 4, 4, None).unwrap();
        let ev = inst.detect(&colored(&[2, 2, 0]), 1).unwrap();
        assert_eq!(ev.alpha, MonoidElement::powerset([1]));
    }

    #[test]
    fn witness_through_middle() {
        // 1 0 1 0 along a path, newest vertex in the middle
        let inst = NonrepColoring::new(Graph::path(4), 4, 4, None).unwrap();
        let ev = inst.detect(&colored(&[1, 0, 1, 0]), 1).unwrap();
        assert_eq!(ev.alpha, MonoidElement::powerset([0, 1]));
    }

    #[test]
    fn condition_at_threshold_holds() {
        let colors = nonrep_color_threshold(3).unwrap() as u32;
        let inst = NonrepColoring::new(Graph::star(3), colors, 8, None).unwrap();
        assert!(inst.check_condition().unwrap().holds());
    }

    #[test]
    fn cubic_tree_solves() {
        let mut rng = DrawRng::seed_from_u64(3);
        let tree = Graph::random_tree(30, 3, &mut rng);
        let inst = NonrepColoring::new(tree, 76, 15, None).unwrap();
        let (report, _) = run(&inst, 11, DEFAULT_BUDGET);
        assert!(report.terminated);
    }
}
