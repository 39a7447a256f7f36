use crate::model::FittsCoefficients;

use super::EngineError;

/// Index of difficulty in bits, Shannon form: `log2(D/W + 1)`.
pub fn index_of_difficulty(distance: f64, target_width: f64) -> f64 {
    (distance / target_width + 1.0).log2()
}

/// Movement time in seconds, `a + b * log2(D/W + 1)`.
pub fn fitts_movement_time(distance: f64, target_width: f64, c: &FittsCoefficients) -> Result<f64, EngineError> {
    if !(target_width.is_finite() && target_width > 0.0) {
        return Err(EngineError::DegenerateTarget(target_width));
    }
    if !(distance.is_finite() && distance >= 0.0) {
        return Err(EngineError::InvalidDistance(distance));
    }
    Ok(c.a + c.b * index_of_difficulty(distance, target_width))
}
