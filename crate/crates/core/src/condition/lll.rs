//! The lopsided local lemma seen as a special case of the weight inequality:
//! events are the generators, the repair for event `A` erases `Gamma(A)`,
//! and `f(A) = 1 / (1 - mu(A))`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ConditionError, ConditionRow, LalConditionTable};
use crate::monoid::{underline_f, GeneratorId, MonoidElement, MonoidFamily, WeightFunction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllWeights {
    pub mu: Vec<f64>,
    pub gamma: Vec<BTreeSet<usize>>,
    pub pr: Vec<f64>,
}

impl LllWeights {
    /// Checks shapes and that no event lies in its own dependency set. The
    /// range of `mu` is checked where it matters, in [`lll_to_weight`].
    pub fn new(mu: Vec<f64>, gamma: Vec<BTreeSet<usize>>, pr: Vec<f64>) -> Result<Self, ConditionError> {
        let m = mu.len();
        if gamma.len() != m || pr.len() != m {
            return Err(ConditionError::InvalidDependency(m.min(gamma.len()).min(pr.len())));
        }
        for (a, deps) in gamma.iter().enumerate() {
            if deps.contains(&a) || deps.iter().any(|&b| b >= m) {
                return Err(ConditionError::InvalidDependency(a));
            }
        }
        if let Some(&bad) = pr.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(ConditionError::InvalidProbability(bad));
        }
        Ok(LllWeights { mu, gamma, pr })
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// `f(A) = 1 / (1 - mu(A))`.
pub fn lll_to_weight(weights: &LllWeights) -> Result<WeightFunction, ConditionError> {
    let values = weights
        .mu
        .iter()
        .enumerate()
        .map(|(event, &mu)| {
            if (0.0..1.0).contains(&mu) {
                Ok(1.0 / (1.0 - mu))
            } else {
                Err(ConditionError::InvalidMu { event, mu })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightFunction::new(values)?)
}

/// `mu(A) * prod_{B in Gamma(A)} (1 - mu(B)) - Pr(A)` for every event.
pub fn check_lopsided_condition(weights: &LllWeights) -> Vec<f64> {
    (0..weights.len())
        .map(|a| {
            let prod: f64 = weights.gamma[a].iter().map(|&b| 1.0 - weights.mu[b]).product();
            weights.mu[a] * prod - weights.pr[a]
        })
        .collect()
}

/// One row per event: `alpha = Gamma(A)` with bound `Pr(A)`.
pub fn lll_condition_table(weights: &LllWeights) -> LalConditionTable {
    let mut table = LalConditionTable::new(MonoidFamily::Powerset);
    for a in 0..weights.len() {
        table.push(
            GeneratorId(a),
            vec![ConditionRow::element(
                "event",
                MonoidElement::powerset(weights.gamma[a].iter().copied()),
                weights.pr[a],
            )],
        );
    }
    table
}

/// `Pr(alpha . X good) / underline_f(alpha)`.
pub fn lower_bound_value(
    alpha: &MonoidElement,
    pr_alpha_good: f64,
    f: &WeightFunction,
) -> Result<f64, ConditionError> {
    if !(0.0..=1.0).contains(&pr_alpha_good) {
        return Err(ConditionError::InvalidProbability(pr_alpha_good));
    }
    Ok(pr_alpha_good / underline_f(alpha, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::check_lal_inequality;

    fn independent_pair(mu: f64, pr: f64) -> LllWeights {
        LllWeights::new(vec![mu, mu], vec![BTreeSet::new(), BTreeSet::new()], vec![pr, pr]).unwrap()
    }

    #[test]
    fn weight_transform_examples() {
        let w = lll_to_weight(&independent_pair(0.5, 0.5)).unwrap();
        assert_eq!(w.values(), &[2.0, 2.0]);
        let w = lll_to_weight(&independent_pair(0.0, 0.0)).unwrap();
        assert_eq!(w.values(), &[1.0, 1.0]);
        assert_eq!(
            lll_to_weight(&independent_pair(1.0, 0.5)),
            Err(ConditionError::InvalidMu { event: 0, mu: 1.0 })
        );
    }

    #[test]
    fn lopsided_slack_examples() {
        assert_eq!(check_lopsided_condition(&independent_pair(0.5, 0.5)), vec![0.0, 0.0]);
        assert!(check_lopsided_condition(&independent_pair(0.3, 0.0)).iter().all(|&s| s >= 0.0));
        assert!(check_lopsided_condition(&independent_pair(0.999, 1.0)).iter().all(|&s| s < 0.0));
    }

    #[test]
    fn self_dependency_rejected() {
        let r = LllWeights::new(vec![0.1], vec![BTreeSet::from([0])], vec![0.1]);
        assert_eq!(r, Err(ConditionError::InvalidDependency(0)));
    }

    #[test]
    fn lopsided_equality_gives_zero_lal_slack() {
        let mu = vec![0.2, 0.35, 0.1];
        let gamma = vec![BTreeSet::from([1]), BTreeSet::from([0, 2]), BTreeSet::from([1])];
        let pr: Vec<f64> = (0..3)
            .map(|a| mu[a] * gamma[a].iter().map(|&b| 1.0 - mu[b]).product::<f64>())
            .collect();
        let weights = LllWeights::new(mu, gamma, pr).unwrap();
        let report = check_lal_inequality(&lll_to_weight(&weights).unwrap(), &lll_condition_table(&weights)).unwrap();
        assert!(report.entries.iter().all(|e| e.slack.abs() < 1e-12));
    }

    #[test]
    fn lower_bound_examples() {
        let weights = independent_pair(0.5, 0.5);
        let f = lll_to_weight(&weights).unwrap();
        let all = MonoidElement::powerset([0, 1]);
        assert!((lower_bound_value(&all, 1.0, &f).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(lower_bound_value(&all, 0.0, &f).unwrap(), 0.0);
        assert_eq!(lower_bound_value(&MonoidElement::powerset([]), 0.7, &f).unwrap(), 0.7);
    }
}
