//! Exact probabilities on explicit finite spaces.

use super::ValidationError;

pub const MAX_OUTCOMES: usize = 1 << 20;

/// `Pr(no event occurs)` on the outcome space `0..probs.len()`, where
/// `events[i](w)` says whether event `i` holds at outcome `w`.
pub fn exact_event_enumeration<F: Fn(usize) -> bool>(probs: &[f64], events: &[F]) -> Result<f64, ValidationError> {
    if probs.len() > MAX_OUTCOMES {
        return Err(ValidationError::TooLarge { what: "outcome space", size: probs.len() as u128, limit: MAX_OUTCOMES as u128 });
    }
    let total: f64 = probs.iter().sum();
    if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) || (total - 1.0).abs() > 1e-12 {
        return Err(ValidationError::InvalidDistribution(total));
    }
    Ok(probs
        .iter()
        .enumerate()
        .filter(|&(w, _)| !events.iter().any(|a| a(w)))
        .map(|(_, p)| p)
        .sum())
}
