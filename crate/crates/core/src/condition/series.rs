//! One-variable weight inequalities `f >= 1 + sum c_i f^{e_i}` and their
//! smallest feasible `f`.

use serde::{Deserialize, Serialize};

use super::ConditionError;

/// Largest `f` the fixpoint scan considers.
pub const SCAN_LIMIT: f64 = 1e6;
/// A fixpoint is accepted when `f - rhs(f) >= -FIXPOINT_TOL`.
pub const FIXPOINT_TOL: f64 = 1e-9;
/// Truncated summation stops once a term falls below this.
pub const TRUNCATION_EPS: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientPattern {
    /// Every term carries the same coefficient.
    Constant,
    /// The `t`-th term carries an extra factor `t`.
    Linear,
}

/// The infinite family
/// `sum_{t >= start} scale * pattern(t) * (ratio * f)^(slope * t + offset)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricFamily {
    pub scale: f64,
    pub ratio: f64,
    pub slope: u32,
    pub offset: i32,
    pub start: u32,
    pub pattern: CoefficientPattern,
}

impl GeometricFamily {
    pub fn exponent(&self, t: u32) -> i64 {
        self.slope as i64 * t as i64 + self.offset as i64
    }

    fn pattern_factor(&self, t: u32) -> f64 {
        match self.pattern {
            CoefficientPattern::Constant => 1.0,
            CoefficientPattern::Linear => t as f64,
        }
    }

    /// Coefficient of `f^{exponent(t)}` in the `t`-th term.
    pub fn coefficient(&self, t: u32) -> f64 {
        self.scale * self.pattern_factor(t) * self.ratio.powi(self.exponent(t) as i32)
    }

    pub fn term(&self, t: u32, f: f64) -> f64 {
        self.scale * self.pattern_factor(t) * (self.ratio * f).powi(self.exponent(t) as i32)
    }

    /// The family converges for `f` strictly below this value.
    pub fn radius(&self) -> f64 {
        if self.ratio > 0.0 {
            1.0 / self.ratio
        } else {
            f64::INFINITY
        }
    }

    /// Closed-form sum, `None` outside the radius of convergence.
    pub fn closed_form(&self, f: f64) -> Option<f64> {
        let w = self.ratio * f;
        if self.scale == 0.0 || w == 0.0 {
            return Some(0.0);
        }
        let z = w.powi(self.slope as i32);
        if !(z < 1.0) {
            return None;
        }
        let lead = w.powi(self.exponent(self.start) as i32);
        let t0 = self.start as f64;
        let sum = match self.pattern {
            CoefficientPattern::Constant => lead / (1.0 - z),
            CoefficientPattern::Linear => lead * (t0 - (t0 - 1.0) * z) / ((1.0 - z) * (1.0 - z)),
        };
        Some(self.scale * sum)
    }

    /// Term-by-term sum, stopping once terms are below `eps` and shrinking.
    pub fn truncated_sum(&self, f: f64, eps: f64) -> Option<f64> {
        // outside the radius of convergence
        self.closed_form(f)?;
        let mut sum = 0.0;
        let mut prev = f64::INFINITY;
        let mut t = self.start;
        loop {
            let term = self.term(t, f);
            sum += term;
            if term < eps && term <= prev {
                return Some(sum);
            }
            prev = term;
            t = t.checked_add(1)?;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub coefficient: f64,
    pub exponent: u32,
}

/// Right-hand side `1 + sum_i c_i f^{e_i} + sum of closed-form families`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    #[serde(default)]
    pub terms: Vec<SeriesTerm>,
    #[serde(default)]
    pub families: Vec<GeometricFamily>,
}

impl SeriesSpec {
    pub fn new() -> Self {
        SeriesSpec::default()
    }

    pub fn with_term(mut self, coefficient: f64, exponent: u32) -> Self {
        self.terms.push(SeriesTerm { coefficient, exponent });
        self
    }

    pub fn with_family(mut self, family: GeometricFamily) -> Self {
        self.families.push(family);
        self
    }

    pub fn validate(&self) -> Result<(), ConditionError> {
        let finite_terms = self
            .terms
            .iter()
            .all(|t| t.coefficient.is_finite() && t.coefficient >= 0.0);
        let finite_families = self.families.iter().all(|fam| {
            fam.scale.is_finite()
                && fam.scale >= 0.0
                && fam.ratio.is_finite()
                && fam.ratio >= 0.0
                && fam.slope >= 1
                && fam.exponent(fam.start) >= 0
        });
        if finite_terms && finite_families {
            Ok(())
        } else {
            Err(ConditionError::InvalidSeries)
        }
    }

    pub fn radius(&self) -> f64 {
        self.families
            .iter()
            .map(GeometricFamily::radius)
            .fold(f64::INFINITY, f64::min)
    }

    fn finite_part(&self, f: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * f.powi(t.exponent as i32))
            .sum::<f64>()
    }

    /// Evaluates the right-hand side, using closed forms for the families.
    pub fn rhs(&self, f: f64) -> Result<f64, ConditionError> {
        let mut total = 1.0 + self.finite_part(f);
        for fam in &self.families {
            total += fam.closed_form(f).ok_or(ConditionError::Overflow)?;
        }
        if total.is_finite() {
            Ok(total)
        } else {
            Err(ConditionError::Overflow)
        }
    }

    /// Evaluates the right-hand side by summing family terms one at a time.
    pub fn rhs_truncated(&self, f: f64) -> Result<f64, ConditionError> {
        let mut total = 1.0 + self.finite_part(f);
        for fam in &self.families {
            total += fam.truncated_sum(f, TRUNCATION_EPS).ok_or(ConditionError::Overflow)?;
        }
        Ok(total)
    }

    /// `f - rhs(f)`, with `-inf` past the radius of convergence.
    pub fn gap(&self, f: f64) -> f64 {
        match self.rhs(f) {
            Ok(r) => f - r,
            Err(_) => f64::NEG_INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixpointResult {
    pub feasible: bool,
    /// Smallest feasible `f` when feasible, otherwise the point where
    /// `f - rhs(f)` came closest to zero.
    pub best_f: f64,
    /// `best_f - rhs(best_f)`.
    pub gap: f64,
}

/// Smallest `f` in `[1, SCAN_LIMIT]` with `f >= rhs(f)`.
///
/// The right-hand side is a power series with non-negative coefficients,
/// so `g(f) = f - rhs(f)` is concave on its domain. The maximum of `g` is
/// located first by golden-section search; this also handles the tangent
/// case where `g` touches zero without changing sign. If the maximum is
/// positive the left root is then bracketed against `g(1) < 0` and bisected.
pub fn solve_series_fixpoint(spec: &SeriesSpec) -> Result<FixpointResult, ConditionError> {
    spec.validate()?;
    let lo = 1.0;
    let radius = spec.radius();
    let hi = if radius.is_finite() {
        (radius * (1.0 - 1e-12)).min(SCAN_LIMIT)
    } else {
        SCAN_LIMIT
    };
    let g = |f: f64| spec.gap(f);

    let g_lo = g(lo);
    if g_lo >= 0.0 {
        return Ok(FixpointResult { feasible: true, best_f: lo, gap: g_lo });
    }
    if hi <= lo {
        return Ok(FixpointResult { feasible: false, best_f: lo, gap: g_lo });
    }

    let (f_max, g_max) = golden_section_max(&g, lo, hi);
    if g_max >= 0.0 {
        let (mut a, mut b) = (lo, f_max);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if g(mid) >= 0.0 {
                b = mid;
            } else {
                a = mid;
            }
        }
        Ok(FixpointResult { feasible: true, best_f: b, gap: g(b) })
    } else {
        Ok(FixpointResult { feasible: g_max >= -FIXPOINT_TOL, best_f: f_max, gap: g_max })
    }
}

fn golden_section_max(g: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..400 {
        if (b - a) <= 1e-15 * b.abs().max(1.0) {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    let mut best = if gc >= gd { (c, gc) } else { (d, gd) };
    for x in [lo, hi] {
        let gx = g(x);
        if gx > best.1 {
            best = (x, gx);
        }
    }
    best
}
