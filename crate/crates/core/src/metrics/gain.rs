use serde::{Deserialize, Serialize};

use super::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainInput {
    pub pre: f64,
    pub post: f64,
    pub max: f64,
}

/// Observed gain as a percentage of the gain that was still possible:
/// `100 * (post - pre) / (max - pre)`. Negative when the score dropped.
pub fn normalized_gain(g: &GainInput) -> Result<f64, MetricsError> {
    if ![g.pre, g.post, g.max].iter().all(|v| v.is_finite()) {
        return Err(MetricsError::NonFinite);
    }
    if g.pre > g.max || g.post > g.max {
        return Err(MetricsError::AboveMax { pre: g.pre, post: g.post, max: g.max });
    }
    if g.pre == g.max {
        return Err(MetricsError::NoPossibleGain(g.max));
    }
    // ratio first so that post == max gives exactly 100
    Ok((g.post - g.pre) / (g.max - g.pre) * 100.0)
}
