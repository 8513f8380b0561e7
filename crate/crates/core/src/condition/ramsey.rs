//! Certificate search for the two-type (triangle / k-clique) Ramsey
//! inequality `f >= 1 + (n-2) p^3 f^3 + C(n-2, k-2) (1-p)^m f^m` with
//! `m = k(k-1)/2`.
//!
//! Substituting `x = p f`, `y = (1-p) f` separates it into
//! `(x - (n-2) x^3) + (y - C(n-2,k-2) y^m) >= 1`, and each bracket is
//! maximized on its own.

use serde::{Deserialize, Serialize};

use super::{ConditionError, SeriesSpec};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyCertificate {
    pub k: u64,
    pub n: u64,
    pub certified: bool,
    pub x: f64,
    pub y: f64,
    /// Blue-edge probability `x / (x + y)`.
    pub p: f64,
    /// Weight `x + y`.
    pub f: f64,
    pub h1: f64,
    pub h2: f64,
}

pub(crate) fn clique_edges(k: u64) -> u64 {
    k * (k - 1) / 2
}

/// `ln C(a, b)`, `None` when the coefficient is zero.
pub(crate) fn ln_binomial(a: u64, b: u64) -> Option<f64> {
    if b > a {
        return None;
    }
    let b = b.min(a - b);
    Some((1..=b).map(|i| ((a - b + i) as f64 / i as f64).ln()).sum())
}

/// Decoupled maximization of the two brackets.
///
/// When a bracket's polynomial part vanishes (no triangles or no `k`-cliques
/// through an edge of `K_n`), the bracket is just the variable itself on
/// `(0, 1)`, whose supremum 1 is not attained; the certificate then picks
/// that variable so the sum is exactly 1.
pub fn ramsey_certify(k: u64, n: u64) -> Result<RamseyCertificate, ConditionError> {
    if k < 3 {
        return Err(ConditionError::InvalidOrder(k));
    }
    if n < 2 {
        return Err(ConditionError::TooFewVertices(n));
    }
    let triangles = (n - 2) as f64;
    let m = clique_edges(k);

    let x_star = (triangles > 0.0).then(|| 1.0 / (3.0 * triangles).sqrt());
    let y_star = ln_binomial(n - 2, k - 2)
        .map(|ln_c| (-(ln_c + (m as f64).ln()) / (m as f64 - 1.0)).exp());

    let h1_of = |x: f64| x - triangles * x * x * x;
    let h2_of = |y: f64| match ln_binomial(n - 2, k - 2) {
        Some(ln_c) => y - (ln_c + m as f64 * y.ln()).exp(),
        None => y,
    };

    let (x, y) = match (x_star, y_star) {
        (Some(x), Some(y)) => (x, y),
        (Some(x), None) => (x, 1.0 - h1_of(x)),
        (None, Some(y)) => (1.0 - h2_of(y), y),
        (None, None) => (0.5, 0.5),
    };
    let (h1, h2) = (h1_of(x), h2_of(y));
    Ok(RamseyCertificate {
        k,
        n,
        certified: h1 + h2 >= 1.0,
        x,
        y,
        p: x / (x + y),
        f: x + y,
        h1,
        h2,
    })
}

/// Largest `n` whose certificate holds, scanning upward from `n = 2`.
///
/// Both bracket maxima decrease in `n`, so the first failure ends the scan.
pub fn ramsey_max_n(k: u64) -> Result<u64, ConditionError> {
    let mut best = 2;
    let mut n = 2;
    while ramsey_certify(k, n)?.certified {
        best = n;
        n += 1;
    }
    Ok(best)
}

/// The Ramsey inequality at blue probability `p` as a one-variable series.
pub fn ramsey_series(n: u64, k: u64, p: f64) -> SeriesSpec {
    let m = clique_edges(k);
    let mut spec = SeriesSpec::new();
    if n > 2 {
        spec = spec.with_term((n - 2) as f64 * p.powi(3), 3);
    }
    if let Some(ln_c) = ln_binomial(n.saturating_sub(2), k - 2) {
        spec = spec.with_term((ln_c + m as f64 * (1.0 - p).ln()).exp(), m as u32);
    }
    spec
}
