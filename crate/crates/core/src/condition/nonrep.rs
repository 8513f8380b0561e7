//! Color-count bound for non-repetitive vertex colorings of graphs with
//! maximum degree `delta`.

use super::ConditionError;

/// `delta^2 + 3 * 2^{-2/3} delta^{5/3} + 2^{2/3} delta^{5/3} / (delta^{1/3} - 2^{1/3})`.
pub fn nonrep_color_bound(delta: u32) -> Result<f64, ConditionError> {
    if delta <= 2 {
        return Err(ConditionError::DegenerateDelta(delta));
    }
    let d = delta as f64;
    let two_23 = 2f64.powf(2.0 / 3.0);
    let d53 = d.powf(5.0 / 3.0);
    Ok(d * d + 3.0 / two_23 * d53 + two_23 * d53 / (d.cbrt() - 2f64.cbrt()))
}

/// Smallest integer color count meeting [`nonrep_color_bound`].
pub fn nonrep_color_threshold(delta: u32) -> Result<u64, ConditionError> {
    Ok(nonrep_color_bound(delta)?.ceil() as u64)
}

/// The substitution `y = 1 - (2/delta)^{1/3}`.
pub fn default_nonrep_y(delta: u32) -> Result<f64, ConditionError> {
    if delta <= 2 {
        return Err(ConditionError::DegenerateDelta(delta));
    }
    Ok(1.0 - (2.0 / delta as f64).cbrt())
}

/// Colors needed for a given `y = delta^2 f / |C|` in `(0, 1)`:
/// `delta^2 (1/y + 1/(delta (1-y)^2))`.
pub fn nonrep_required_colors(delta: u32, y: f64) -> Result<f64, ConditionError> {
    if delta == 0 {
        return Err(ConditionError::DegenerateDelta(delta));
    }
    if !(y > 0.0 && y < 1.0) {
        return Err(ConditionError::InvalidProbability(y));
    }
    let d = delta as f64;
    Ok(d * d * (1.0 / y + 1.0 / (d * (1.0 - y) * (1.0 - y))))
}
