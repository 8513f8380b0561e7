//! Finite truncations of the non-negative array inequality and its
//! one-row corollary.

use serde::{Deserialize, Serialize};

use super::ConditionError;

/// A rectangular block of non-negative reals `a[i][j]` (row `i`, column
/// `j`, both 0-based here); every entry outside the block is zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct TruncatedArray {
    rows: Vec<Vec<f64>>,
}

impl TruncatedArray {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, ConditionError> {
        let width = rows.first().map_or(0, Vec::len);
        let ok = rows
            .iter()
            .all(|r| r.len() == width && r.iter().all(|&a| a.is_finite() && a >= 0.0));
        if !ok {
            return Err(ConditionError::InvalidArray);
        }
        Ok(TruncatedArray { rows })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

impl TryFrom<Vec<Vec<f64>>> for TruncatedArray {
    type Error = ConditionError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, Self::Error> {
        TruncatedArray::new(rows)
    }
}

impl From<TruncatedArray> for Vec<Vec<f64>> {
    fn from(a: TruncatedArray) -> Self {
        a.rows
    }
}

/// `sup_j b_ij` for every row, where (1-based)
/// `b_ij = a_ij / sum_k sum_{l <= i+j-1} a_kl` and `0/0 = 0`.
pub fn array_row_sups(a: &TruncatedArray) -> Result<Vec<f64>, ConditionError> {
    let width = a.width();
    // column_prefix[l] = sum over all rows of the first l columns
    let mut column_prefix = vec![0.0; width + 1];
    for l in 0..width {
        let col: f64 = a.rows.iter().map(|r| r[l]).sum();
        column_prefix[l + 1] = column_prefix[l] + col;
    }
    if column_prefix[width] <= 0.0 {
        return Err(ConditionError::ZeroSum);
    }
    Ok(a.rows
        .iter()
        .enumerate()
        .map(|(i0, row)| {
            row.iter()
                .enumerate()
                .map(|(j0, &aij)| {
                    // 1-based i + j - 1 = (i0 + 1) + (j0 + 1) - 1
                    let cols = (i0 + j0 + 1).min(width);
                    let denom = column_prefix[cols];
                    if denom > 0.0 {
                        aij / denom
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max)
        })
        .collect())
}

/// `1 + sum_i (sup_j b_ij) x^i - x` at each sample.
pub fn array_theorem_margins(a: &TruncatedArray, xs: &[f64]) -> Result<Vec<f64>, ConditionError> {
    let sups = array_row_sups(a)?;
    Ok(xs
        .iter()
        .map(|&x| {
            let mut power = 1.0;
            let mut lhs = 1.0;
            for s in &sups {
                power *= x;
                lhs += s * power;
            }
            lhs - x
        })
        .collect())
}

/// True iff `1 + sum_i (sup_j b_ij) x^i > x` at every sample.
pub fn array_theorem_check(a: &TruncatedArray, xs: &[f64]) -> Result<bool, ConditionError> {
    Ok(array_theorem_margins(a, xs)?.iter().all(|&m| m > 0.0))
}

/// `sup_j a_j / sum_{i <= j+k-1} a_i` over the given (1-based) range and the
/// index attaining it.
pub fn corollary_supremum(a: &[f64], k: usize) -> Result<(f64, usize), ConditionError> {
    if k == 0 || a.iter().any(|&v| !(v.is_finite() && v >= 0.0)) {
        return Err(ConditionError::InvalidArray);
    }
    let mut prefix = vec![0.0; a.len() + 1];
    for (i, &v) in a.iter().enumerate() {
        prefix[i + 1] = prefix[i] + v;
    }
    if prefix[a.len()] <= 0.0 {
        return Err(ConditionError::ZeroSum);
    }
    let mut best = (0.0, 1);
    for (j0, &aj) in a.iter().enumerate() {
        let denom = prefix[(j0 + k).min(a.len())];
        let ratio = if denom > 0.0 { aj / denom } else { 0.0 };
        if ratio > best.0 {
            best = (ratio, j0 + 1);
        }
    }
    Ok(best)
}
