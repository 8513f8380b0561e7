//! Choice functions avoiding forbidden partial choices.
//!
//! Block `k` picks one of its elements; element `i` of block `k` is written
//! `(k, i)`. A forbidden choice is a set of such pairs on distinct blocks
//! and is violated when every block in it picked the listed element.

use serde::{Deserialize, Serialize};

use super::{Graph, ProblemError};
use crate::condition::{ConditionRow, LalConditionTable, SLACK_TOL};
use crate::engine::{ProblemInstance, SampleError, ViolationClass, WitnessEvent};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, PartialAssignment, WeightFunction};
use crate::rng::DrawRng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoiceSystem {
    /// `marginals[k][i]` is the mass `p` of element `i` of block `k`.
    pub marginals: Vec<Vec<f64>>,
    pub forbidden: Vec<Vec<(usize, u32)>>,
}

impl ChoiceSystem {
    /// Proper `colors`-coloring of `graph` as a choice problem: block `v`
    /// holds the colors of vertex `v`, each with mass `q`, and every edge and
    /// color gives a forbidden pair.
    pub fn graph_coloring(graph: &Graph, colors: u32, q: f64) -> Self {
        let marginals = vec![vec![q; colors as usize]; graph.n()];
        let forbidden = graph
            .edges()
            .iter()
            .flat_map(|&(a, b)| (0..colors).map(move |c| vec![(a, c), (b, c)]))
            .collect();
        ChoiceSystem { marginals, forbidden }
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        for (k, block) in self.marginals.iter().enumerate() {
            let ok = !block.is_empty()
                && block.iter().all(|p| (0.0..=1.0).contains(p))
                && block.iter().sum::<f64>() > 0.0;
            if !ok {
                return Err(ProblemError::InvalidMarginals(k));
            }
        }
        for (j, pj) in self.forbidden.iter().enumerate() {
            let bad = || ProblemError::InvalidParameter(format!("forbidden choice {j} is malformed"));
            if pj.is_empty() {
                return Err(bad());
            }
            let mut blocks: Vec<usize> = pj.iter().map(|&(k, _)| k).collect();
            blocks.sort_unstable();
            blocks.dedup();
            if blocks.len() != pj.len() {
                return Err(bad());
            }
            for &(k, i) in pj {
                if k >= self.marginals.len() || i as usize >= self.marginals[k].len() {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    /// `f(k)`: total mass of block `k`.
    pub fn block_weight(&self, k: usize) -> f64 {
        self.marginals[k].iter().sum()
    }

    fn mass(&self, pj: &[(usize, u32)]) -> f64 {
        pj.iter().map(|&(k, i)| self.marginals[k][i as usize]).product()
    }

    /// `f(k) - 1 - sum over forbidden choices touching k of their mass`.
    pub fn block_slack(&self, k: usize) -> f64 {
        let touching: f64 = self
            .forbidden
            .iter()
            .filter(|pj| pj.iter().any(|&(b, _)| b == k))
            .map(|pj| self.mass(pj))
            .sum();
        self.block_weight(k) - 1.0 - touching
    }
}

#[derive(Clone, Debug)]
pub struct ChoiceFunction {
    system: ChoiceSystem,
    /// Forbidden choice ids touching each block.
    touching: Vec<Vec<usize>>,
}

impl ChoiceFunction {
    /// Rejects systems whose mass condition fails at some block.
    pub fn new(system: ChoiceSystem) -> Result<Self, ProblemError> {
        system.validate()?;
        for k in 0..system.marginals.len() {
            let slack = system.block_slack(k);
            if slack < -SLACK_TOL {
                return Err(ProblemError::ConditionUnsatisfiable { min_slack: slack });
            }
        }
        let mut touching = vec![Vec::new(); system.marginals.len()];
        for (j, pj) in system.forbidden.iter().enumerate() {
            for &(k, _) in pj {
                touching[k].push(j);
            }
        }
        Ok(ChoiceFunction { system, touching })
    }

    pub fn system(&self) -> &ChoiceSystem {
        &self.system
    }
}

impl ProblemInstance for ChoiceFunction {
    fn name(&self) -> &str {
        "choice"
    }

    fn num_slots(&self) -> usize {
        self.system.marginals.len()
    }

    fn monoid(&self) -> MonoidFamily {
        MonoidFamily::Powerset
    }

    /// Element `i` with probability `p(k, i) / f(k)`.
    fn sample(&self, slot: usize, _: &PartialAssignment, rng: &mut DrawRng) -> Result<u32, SampleError> {
        rng.weighted(&self.system.marginals[slot])
            .map(|i| i as u32)
            .ok_or(SampleError::NoLegalValue(slot))
    }

    /// The violated forbidden choice with the smallest block set, then the
    /// smallest id.
    fn detect(&self, state: &PartialAssignment, last: usize) -> Option<WitnessEvent> {
        self.touching[last]
            .iter()
            .filter(|&&j| self.system.forbidden[j].iter().all(|&(k, i)| state.get(k) == Some(i)))
            .map(|&j| {
                let mut blocks: Vec<usize> = self.system.forbidden[j].iter().map(|&(k, _)| k).collect();
                blocks.sort_unstable();
                (blocks, j)
            })
            .min()
            .map(|(blocks, j)| WitnessEvent {
                class: ViolationClass::ForbiddenChoice,
                alpha: MonoidElement::powerset(blocks),
                detail: vec![j],
            })
    }

    fn goal(&self, state: &PartialAssignment) -> bool {
        self.system
            .forbidden
            .iter()
            .all(|pj| !pj.iter().all(|&(k, i)| state.get(k) == Some(i)))
    }

    /// Rows `(dom P_j, prod p(u) / f(block of u))`.
    fn condition_table(&self) -> LalConditionTable {
        let mut table = LalConditionTable::new(MonoidFamily::Powerset);
        for (k, js) in self.touching.iter().enumerate() {
            let rows = js
                .iter()
                .map(|&j| {
                    let pj = &self.system.forbidden[j];
                    let bound: f64 = pj
                        .iter()
                        .map(|&(b, i)| self.system.marginals[b][i as usize] / self.system.block_weight(b))
                        .product();
                    ConditionRow::element("forbidden-choice", MonoidElement::powerset(pj.iter().map(|&(b, _)| b)), bound)
                })
                .collect();
            table.push(GeneratorId(k), rows);
        }
        table
    }

    fn weight(&self) -> WeightFunction {
        let values = (0..self.system.marginals.len()).map(|k| self.system.block_weight(k)).collect();
        WeightFunction::new(values).expect("block masses are positive")
    }
}
