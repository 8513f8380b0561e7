//! Condition rows and weights for the solvers, built from their parameters.
//!
//! Every solver is homogeneous: all generators carry the same rows up to
//! relabelling and the same weight, so one generator's inequality decides
//! the whole table.

use serde::{Deserialize, Serialize};

use super::{
    check_lal_inequality, default_nonrep_y, ln_binomial, ramsey_certify, solve_series_fixpoint,
    ConditionError, ConditionRow, FixpointResult, GeometricFamily, CoefficientPattern,
    LalConditionTable, SeriesSpec, SlackReport,
};
use crate::monoid::{GeneratorId, MonoidElement, MonoidFamily, WeightFunction};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AcyclicStrategy {
    /// Sample only colors that keep the coloring proper and free of
    /// two-colored 4-cycles.
    #[default]
    Restricted,
    /// Sample any color and repair conflicts as they appear.
    Uniform,
}

/// Single retry row `(empty, delta / colors)`.
pub fn proper_rows(delta: u32, colors: u32) -> Vec<ConditionRow> {
    vec![ConditionRow::element(
        "monochromatic-edge",
        MonoidElement::powerset([]),
        (delta as f64 / colors as f64).min(1.0),
    )]
}

/// `sum_{t >= 1} (f / L)^t`: a repeated block of length `t` erases `b^{t-1}`
/// on top of the popped letter.
pub fn nonrep_sequence_rows(list_size: u32) -> Vec<ConditionRow> {
    vec![ConditionRow::Family {
        class: "repeated-block".into(),
        closed_form: GeometricFamily {
            scale: 1.0,
            ratio: 1.0 / list_size as f64,
            slope: 1,
            offset: 0,
            start: 1,
            pattern: CoefficientPattern::Constant,
        },
    }]
}

/// `sum_{t >= 1} t delta^{2t-1} colors^{-t} f^t`.
pub fn nonrep_coloring_rows(delta: u32, colors: u32) -> Vec<ConditionRow> {
    if delta == 0 {
        return Vec::new();
    }
    let d = delta as f64;
    vec![ConditionRow::Family {
        class: "repetitive-path".into(),
        closed_form: GeometricFamily {
            scale: 1.0 / d,
            ratio: d * d / colors as f64,
            slope: 1,
            offset: 0,
            start: 1,
            pattern: CoefficientPattern::Linear,
        },
    }]
}

/// Restricted: `sum_{t >= 3} ((delta-1) f / (colors - 2(delta-1)))^{2t-2}`.
/// Uniform: a retry row with bound `2(delta-1)/colors` plus
/// `sum_{t >= 3} ((delta-1) f / colors)^{2t-2}`.
pub fn acyclic_rows(delta: u32, colors: u32, strategy: AcyclicStrategy) -> Vec<ConditionRow> {
    let d1 = delta.saturating_sub(1) as f64;
    let c = colors as f64;
    let cycles = |ratio: f64| ConditionRow::Family {
        class: "bichromatic-cycle".into(),
        closed_form: GeometricFamily {
            scale: 1.0,
            ratio,
            slope: 2,
            offset: -2,
            start: 3,
            pattern: CoefficientPattern::Constant,
        },
    };
    match strategy {
        AcyclicStrategy::Restricted => {
            let choices = c - 2.0 * d1;
            let ratio = if choices > 0.0 { d1 / choices } else { f64::INFINITY };
            vec![cycles(ratio)]
        }
        AcyclicStrategy::Uniform => vec![
            ConditionRow::element(
                "local-conflict",
                MonoidElement::powerset([]),
                (2.0 * d1 / c).min(1.0),
            ),
            cycles(d1 / c),
        ],
    }
}

/// Edge id of `{u, v}` in `K_n` with edges listed lexicographically.
pub fn complete_edge_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Rows for edge `(u, v)` of `K_n`: one representative triangle with
/// multiplicity `n - 2` and bound `p^3`, and one representative `k`-clique
/// with multiplicity `C(n-2, k-2)` and bound `(1-p)^{C(k,2)}`. Each `alpha`
/// holds the other edges of the representative.
pub fn ramsey_rows(n: usize, k: usize, p: f64, u: usize, v: usize) -> Vec<ConditionRow> {
    let others: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
    let mut rows = Vec::new();
    let clique_alpha = |vertices: &[usize]| {
        let mut alpha = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                if !((a == u && b == v) || (a == v && b == u)) {
                    alpha.push(complete_edge_index(n, a, b));
                }
            }
        }
        MonoidElement::powerset(alpha)
    };
    if let Some(&w) = others.first() {
        rows.push(ConditionRow::Element {
            class: "blue-triangle".into(),
            alpha: clique_alpha(&[u, v, w]),
            p_bound: p.powi(3),
            multiplicity: others.len() as f64,
        });
    }
    if k >= 2 && others.len() >= k - 2 {
        let mut vertices = vec![u, v];
        vertices.extend_from_slice(&others[..k - 2]);
        let m = (k * (k - 1) / 2) as i32;
        let multiplicity = ln_binomial(others.len() as u64, k as u64 - 2).map_or(0.0, f64::exp);
        rows.push(ConditionRow::Element {
            class: "red-clique".into(),
            alpha: clique_alpha(&vertices),
            p_bound: (1.0 - p).powi(m),
            multiplicity: multiplicity.round(),
        });
    }
    rows
}

/// A single-generator table with the given rows.
pub fn homogeneous_table(family: MonoidFamily, rows: Vec<ConditionRow>) -> LalConditionTable {
    let mut table = LalConditionTable::new(family);
    table.push(GeneratorId(0), rows);
    table
}

/// Parameters of one of the solvers' conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum PresetParams {
    Proper { delta: u32, colors: u32 },
    NonrepSeq { list_size: u32 },
    NonrepColor { delta: u32, colors: u32, y: Option<f64> },
    Acyclic { delta: u32, colors: u32, strategy: AcyclicStrategy },
    Ramsey { n: u64, k: u64, p: Option<f64> },
}

/// The condition of one solver evaluated at its weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresetCheck {
    pub table: LalConditionTable,
    pub series: SeriesSpec,
    pub fixpoint: FixpointResult,
    /// Closed-form weight where one is known, otherwise the fixpoint.
    pub weight: f64,
    pub report: Option<SlackReport>,
}

impl PresetCheck {
    pub fn holds(&self) -> bool {
        self.report.as_ref().is_some_and(SlackReport::holds)
    }
}

impl PresetParams {
    pub fn table(&self) -> Result<LalConditionTable, ConditionError> {
        Ok(match *self {
            PresetParams::Proper { delta, colors } => {
                homogeneous_table(MonoidFamily::Powerset, proper_rows(delta, colors))
            }
            PresetParams::NonrepSeq { list_size } => {
                homogeneous_table(MonoidFamily::FreePower, nonrep_sequence_rows(list_size))
            }
            PresetParams::NonrepColor { delta, colors, .. } => {
                homogeneous_table(MonoidFamily::Powerset, nonrep_coloring_rows(delta, colors))
            }
            PresetParams::Acyclic { delta, colors, strategy } => {
                homogeneous_table(MonoidFamily::Powerset, acyclic_rows(delta, colors, strategy))
            }
            PresetParams::Ramsey { n, k, p } => {
                if k < 3 {
                    return Err(ConditionError::InvalidOrder(k));
                }
                if n < 2 {
                    return Err(ConditionError::TooFewVertices(n));
                }
                let p = match p {
                    Some(p) => p,
                    None => ramsey_certify(k, n)?.p,
                };
                if !(0.0..=1.0).contains(&p) {
                    return Err(ConditionError::InvalidProbability(p));
                }
                homogeneous_table(MonoidFamily::Powerset, ramsey_rows(n as usize, k as usize, p, 0, 1))
            }
        })
    }

    fn closed_form_weight(&self) -> Result<Option<f64>, ConditionError> {
        Ok(match *self {
            PresetParams::Proper { delta, colors } if colors > delta => {
                Some(colors as f64 / (colors - delta) as f64)
            }
            PresetParams::NonrepSeq { list_size } if list_size >= 4 => {
                let l = list_size as f64;
                Some((l - (l * l - 4.0 * l).sqrt()) / 2.0)
            }
            PresetParams::NonrepColor { delta: 0, .. } => Some(1.0),
            PresetParams::NonrepColor { delta, y: None, .. } if delta <= 2 => None,
            PresetParams::NonrepColor { delta, colors, y } => {
                let y = match y {
                    Some(y) => y,
                    None => default_nonrep_y(delta)?,
                };
                if !(y > 0.0 && y < 1.0) {
                    return Err(ConditionError::InvalidProbability(y));
                }
                Some(y * colors as f64 / (delta as f64 * delta as f64))
            }
            PresetParams::Ramsey { n, k, p: None } => Some(ramsey_certify(k, n)?.f),
            _ => None,
        })
    }

    /// Builds the table, finds the weight and evaluates the slack there.
    pub fn evaluate(&self) -> Result<PresetCheck, ConditionError> {
        let table = self.table()?;
        let series = table.series_for(GeneratorId(0))?;
        let fixpoint = solve_series_fixpoint(&series)?;
        let weight = self.closed_form_weight()?.unwrap_or(fixpoint.best_f).max(1.0);
        let f = WeightFunction::uniform(generators_touched(&table), weight)?;
        let report = match check_lal_inequality(&f, &table) {
            Ok(r) => Some(r),
            Err(ConditionError::Overflow) => None,
            Err(e) => return Err(e),
        };
        Ok(PresetCheck { table, series, fixpoint, weight, report })
    }
}

/// One more than the largest slot any row or generator mentions.
fn generators_touched(table: &LalConditionTable) -> usize {
    let mut top = 0;
    for g in &table.generators {
        top = top.max(g.generator.0 + 1);
        for row in &g.rows {
            if let ConditionRow::Element { alpha: MonoidElement::Powerset(s), .. } = row {
                if let Some(&m) = s.last() {
                    top = top.max(m + 1);
                }
            }
        }
    }
    top.max(1)
}
