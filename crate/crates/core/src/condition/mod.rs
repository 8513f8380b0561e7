//! Weight inequalities: the generic per-generator check, one-variable series
//! and their fixpoints, and the closed-form bounds used by the solvers.

mod array;
mod lll;
mod nonrep;
pub mod presets;
pub use presets::{AcyclicStrategy, PresetCheck, PresetParams};
mod ramsey;
pub(crate) use ramsey::ln_binomial;
mod series;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{underline_f, GeneratorId, MonoidElement, MonoidError, MonoidFamily, WeightFunction};

pub use array::{array_row_sups, array_theorem_check, array_theorem_margins, corollary_supremum, TruncatedArray};
pub use lll::{check_lopsided_condition, lll_condition_table, lll_to_weight, lower_bound_value, LllWeights};
pub use nonrep::{default_nonrep_y, nonrep_color_bound, nonrep_color_threshold, nonrep_required_colors};
pub use ramsey::{ramsey_certify, ramsey_max_n, ramsey_series, RamseyCertificate};
pub use series::{
    solve_series_fixpoint, CoefficientPattern, FixpointResult, GeometricFamily, SeriesSpec, SeriesTerm,
    FIXPOINT_TOL, SCAN_LIMIT, TRUNCATION_EPS,
};

/// Slack below `-SLACK_TOL` means the inequality fails.
pub const SLACK_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConditionError {
    #[error("right-hand side diverges at the given weight")]
    Overflow,
    #[error("series coefficients must be finite and non-negative")]
    InvalidSeries,
    #[error("maximum degree {0} is degenerate for this bound (needs at least 3)")]
    DegenerateDelta(u32),
    #[error("invalid clique order k = {0} (needs k >= 3)")]
    InvalidOrder(u64),
    #[error("K_{0} has no edges")]
    TooFewVertices(u64),
    #[error("mu({event}) = {mu} is outside [0, 1)")]
    InvalidMu { event: usize, mu: f64 },
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("dependency set of event {0} is malformed")]
    InvalidDependency(usize),
    #[error("sum of the array entries is zero")]
    ZeroSum,
    #[error("array rows must be rectangular and entries non-negative")]
    InvalidArray,
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// One row of a generator's condition: either a single monoid element (with
/// a multiplicity for classes of elements sharing the same bound and weight)
/// or an infinite homogeneous family with a closed form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConditionRow {
    Element {
        class: String,
        alpha: MonoidElement,
        p_bound: f64,
        #[serde(default = "one")]
        multiplicity: f64,
    },
    /// Contributes `closed_form(f(generator))`; the family's exponent is the
    /// size of `alpha · generator`, which presumes equal weights on the slots
    /// the family touches.
    Family { class: String, closed_form: GeometricFamily },
}

fn one() -> f64 {
    1.0
}

impl ConditionRow {
    pub fn element(class: impl Into<String>, alpha: MonoidElement, p_bound: f64) -> Self {
        ConditionRow::Element { class: class.into(), alpha, p_bound, multiplicity: 1.0 }
    }

    pub fn class(&self) -> &str {
        match self {
            ConditionRow::Element { class, .. } | ConditionRow::Family { class, .. } => class,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorRows {
    pub generator: GeneratorId,
    pub rows: Vec<ConditionRow>,
}

/// Upper bounds on `P(b, alpha)` for every generator `b`; elements that are
/// not listed have bound zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LalConditionTable {
    pub family: MonoidFamily,
    pub generators: Vec<GeneratorRows>,
}

impl LalConditionTable {
    pub fn new(family: MonoidFamily) -> Self {
        LalConditionTable { family, generators: Vec::new() }
    }

    pub fn push(&mut self, generator: GeneratorId, rows: Vec<ConditionRow>) {
        self.generators.push(GeneratorRows { generator, rows });
    }

    /// Checks that every bound lies in `[0, 1]` and multiplicities are
    /// non-negative.
    pub fn validate(&self) -> Result<(), ConditionError> {
        for g in &self.generators {
            for row in &g.rows {
                if let ConditionRow::Element { p_bound, multiplicity, .. } = row {
                    if !(0.0..=1.0).contains(p_bound) {
                        return Err(ConditionError::InvalidProbability(*p_bound));
                    }
                    if !(multiplicity.is_finite() && *multiplicity >= 0.0) {
                        return Err(ConditionError::InvalidSeries);
                    }
                }
            }
        }
        Ok(())
    }

    /// The generator's inequality as a one-variable series, assuming every
    /// slot carries the same weight: an element row becomes the term
    /// `multiplicity * p_bound * f^{|alpha · b|}`.
    pub fn series_for(&self, generator: GeneratorId) -> Result<SeriesSpec, ConditionError> {
        let beta = self.family.generator(generator)?;
        let mut spec = SeriesSpec::new();
        let rows = self
            .generators
            .iter()
            .filter(|g| g.generator == generator)
            .flat_map(|g| g.rows.iter());
        for row in rows {
            match row {
                ConditionRow::Element { alpha, p_bound, multiplicity, .. } => {
                    let size = alpha.mul(&beta)?.canonical_len() as u32;
                    spec = spec.with_term(multiplicity * p_bound, size);
                }
                ConditionRow::Family { closed_form, .. } => {
                    spec = spec.with_family(closed_form.clone());
                }
            }
        }
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSlack {
    pub generator: GeneratorId,
    pub weight: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub entries: Vec<GeneratorSlack>,
}

impl SlackReport {
    pub fn min_slack(&self) -> f64 {
        self.entries.iter().map(|e| e.slack).fold(f64::INFINITY, f64::min)
    }

    /// True iff every slack is at least `-SLACK_TOL`.
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.slack >= -SLACK_TOL)
    }

    pub fn worst(&self) -> Option<&GeneratorSlack> {
        self.entries
            .iter()
            .min_by(|a, b| a.slack.total_cmp(&b.slack))
    }
}

/// Evaluates `f(b) - (1 + sum_alpha P(b, alpha) * underline_f(alpha · b))`
/// for every generator in the table.
pub fn check_lal_inequality(
    f: &WeightFunction,
    table: &LalConditionTable,
) -> Result<SlackReport, ConditionError> {
    table.validate()?;
    let mut entries = Vec::with_capacity(table.generators.len());
    for g in &table.generators {
        let weight = f.get(g.generator)?;
        let beta = table.family.generator(g.generator)?;
        let mut rhs = 1.0;
        for row in &g.rows {
            rhs += match row {
                ConditionRow::Element { alpha, p_bound, multiplicity, .. } => {
                    if *p_bound == 0.0 || *multiplicity == 0.0 {
                        0.0
                    } else {
                        multiplicity * p_bound * underline_f(&alpha.mul(&beta)?, f)?
                    }
                }
                ConditionRow::Family { closed_form, .. } => {
                    closed_form.closed_form(weight).ok_or(ConditionError::Overflow)?
                }
            };
        }
        if !rhs.is_finite() {
            return Err(ConditionError::Overflow);
        }
        entries.push(GeneratorSlack { generator: g.generator, weight, rhs, slack: weight - rhs });
    }
    Ok(SlackReport { entries })
}
