//! Two-colorings of `K_n` with no blue triangle and no red `K_k`.
//!
//! Edge `i` is the `i`-th pair `(a, b)`, `a < b`, in lexicographic order.
//! Value 1 is blue (drawn with probability `p`), 0 is red.

use super::ProblemError;
use crate::condition::presets::{complete_edge_index, ramsey_rows};
use crate::condition::{ramsey_certify, ramsey_series, solve_series_fixpoint, LalConditionTable, RamseyCertificate};
use crate::engine::{ProblemInstance, SampleError, ViolationClass, WitnessEvent};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction};
use crate::rng::DrawRng;

pub const RED: u32 = 0;
pub const BLUE: u32 = 1;

#[derive(Clone, Debug)]
pub struct RamseyColoring {
    n: usize,
    k: usize,
    p: f64,
    weight: f64,
    pairs: Vec<(usize, usize)>,
}

impl RamseyColoring {
    pub fn new(n: usize, k: usize, p: f64) -> Result<Self, ProblemError> {
        let cert = Self::validate(n, k)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(ProblemError::InvalidParameter(format!("blue probability {p} outside (0, 1)")));
        }
        let weight = if p == cert.p {
            cert.f
        } else {
            solve_series_fixpoint(&ramsey_series(n as u64, k as u64, p))?.best_f
        };
        Ok(Self::build(n, k, p, weight))
    }

    /// Uses the blue probability and weight of the certificate for `(k, n)`.
    pub fn certified(n: usize, k: usize) -> Result<Self, ProblemError> {
        let cert = Self::validate(n, k)?;
        Ok(Self::build(n, k, cert.p, cert.f))
    }

    fn validate(n: usize, k: usize) -> Result<RamseyCertificate, ProblemError> {
        Ok(ramsey_certify(k as u64, n as u64)?)
    }

    fn build(n: usize, k: usize, p: f64, weight: f64) -> Self {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        RamseyColoring { n, k, p, weight, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    fn color(&self, state: &PartialAssignment, a: usize, b: usize) -> Option<u32> {
        state.get(complete_edge_index(self.n, a, b))
    }

    /// Smallest vertex set `S` (lexicographically) of size `need` inside
    /// `cands` whose pairs are all red.
    fn red_clique(&self, state: &PartialAssignment, chosen: &mut Vec<usize>, cands: &[usize], need: usize) -> bool {
        if chosen.len() == need {
            return true;
        }
        for (i, &w) in cands.iter().enumerate() {
            if chosen.len() + (cands.len() - i) < need {
                return false;
            }
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&x| self.color(state, w, x) == Some(RED))
                .collect();
            chosen.push(w);
            if self.red_clique(state, chosen, &next, need) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn clique_edges(&self, vertices: &[usize]) -> Vec<usize> {
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                edges.push(complete_edge_index(self.n, a, b));
            }
        }
        edges.sort_unstable();
        edges
    }
}

impl ProblemInstance for RamseyColoring {
    fn name(&self) -> &str {
        "ramsey"
    }

    fn num_slots(&self) -> usize {
        self.pairs.len()
    }

    fn monoid(&self) -> MonoidFamily {
        MonoidFamily::Powerset
    }

    fn sample(&self, _: usize, _: &PartialAssignment, rng: &mut DrawRng) -> Result<u32, SampleError> {
        Ok(if rng.bernoulli(self.p) { BLUE } else { RED })
    }

    /// A blue triangle on `e` with the smallest edge set, or the red `K_k`
    /// on `e` whose other vertices form the lexicographically smallest set.
    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent> {
        let (u, v) = self.pairs[last];
        let c = state.get(last)?;
        let common = |want: u32| -> Vec<usize> {
            (0..self.n)
                .filter(|&w| w != u && w != v)
                .filter(|&w| self.color(state, u, w) == Some(want) && self.color(state, v, w) == Some(want))
                .collect()
        };
        let (class, vertices) = if c == BLUE {
            let (_, w) = common(BLUE)
                .into_iter()
                .map(|w| (self.clique_edges(&[u, v, w]), w))
                .min()?;
            let mut tri = vec![u, v, w];
            tri.sort_unstable();
            (ViolationClass::BlueTriangle, tri)
        } else {
            let need = self.k.checked_sub(2)?;
            let mut chosen = Vec::new();
            if !self.red_clique(state, &mut chosen, &common(RED), need) {
                return None;
            }
            chosen.extend([u, v]);
            chosen.sort_unstable();
            (ViolationClass::RedClique, chosen)
        };
        Some(WitnessEvent { class, alpha: MonoidElement::powerset(self.clique_edges(&vertices)), detail: vertices })
    }

    fn goal(&self, state: &PartialAssignment) -> bool {
        state.domain().all(|e| self.detect(state, e).is_none())
    }

    fn condition_table(&self) -> LalConditionTable {
        let mut table = LalConditionTable::new(MonoidFamily::Powerset);
        for (e, &(u, v)) in self.pairs.iter().enumerate() {
            table.push(GeneratorId(e), ramsey_rows(self.n, self.k, self.p, u, v));
        }
        table
    }

    fn weight(&self) -> WeightFunction {
        WeightFunction::uniform(self.pairs.len().max(1), self.weight).expect("weight is positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::ramsey_max_n;
    use crate::engine::{run, DEFAULT_BUDGET};

    #[test]
    fn all_red_triangle_is_red_k3() {
        let inst = RamseyColoring::new(3, 3, 0.5).unwrap();
        let ev = inst.detect(&PartialAssignment::total(&[RED; 3]), 2).unwrap();
        assert_eq!(ev.class, ViolationClass::RedClique);
        assert_eq!(ev.detail, vec![0, 1, 2]);
        assert_eq!(ev.alpha, MonoidElement::powerset([0, 1, 2]));
    }

    #[test]
    fn blue_triangle_detected() {
        let inst = RamseyColoring::new(4, 4, 0.5).unwrap();
        // K_4 edges: 01 02 03 12 13 23; blue triangle 1-2-3
        let state = PartialAssignment::total(&[RED, RED, RED, BLUE, BLUE, BLUE]);
        let ev = inst.detect(&state, 5).unwrap();
        assert_eq!(ev.class, ViolationClass::BlueTriangle);
        assert_eq!(ev.detail, vec![1, 2, 3]);
        assert_eq!(ev.alpha, MonoidElement::powerset([3, 4, 5]));
    }

    #[test]
    fn certified_instance_condition_holds() {
        for k in 3..=6 {
            let n = ramsey_max_n(k).unwrap() as usize;
            let inst = RamseyColoring::certified(n, k as usize).unwrap();
            assert!(inst.check_condition().unwrap().holds(), "k={k}");
        }
    }

    #[test]
    fn table_matches_series() {
        let inst = RamseyColoring::new(8, 4, 0.3).unwrap();
        let series = inst.condition_table().series_for(GeneratorId(17)).unwrap();
        let want = ramsey_series(8, 4, 0.3);
        assert!((series.rhs(1.2).unwrap() - want.rhs(1.2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn k5_witness_found() {
        let n = ramsey_max_n(5).unwrap() as usize;
        let inst = RamseyColoring::certified(n, 5).unwrap();
        let (report, _) = run(&inst, 1, DEFAULT_BUDGET);
        assert!(report.terminated);
    }
}
