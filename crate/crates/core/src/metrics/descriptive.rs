use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::alpha::sample_variance;
use super::MetricsError;

/// Mean, median and, for n >= 2, sample SD and a t-based confidence
/// interval of the mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub sd: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub confidence: f64,
}

/// Two-sided critical value `t(df, 1 - (1 - confidence)/2)`.
pub fn t_critical(df: f64, confidence: f64) -> Result<f64, MetricsError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(MetricsError::Confidence(confidence));
    }
    let t = StudentsT::new(0.0, 1.0, df).map_err(|e| MetricsError::Distribution(e.to_string()))?;
    Ok(t.inverse_cdf(1.0 - (1.0 - confidence) / 2.0))
}

/// `mean ± t * sd / sqrt(n)`.
pub fn mean_ci(mean: f64, sd: f64, n: usize, confidence: f64) -> Result<(f64, f64), MetricsError> {
    if n < 2 {
        return Err(MetricsError::TooFewValues(n));
    }
    let half = t_critical((n - 1) as f64, confidence)? * sd / (n as f64).sqrt();
    Ok((mean - half, mean + half))
}

pub fn descriptive_stats(values: &[f64], confidence: f64) -> Result<DescriptiveStats, MetricsError> {
    if values.is_empty() {
        return Err(MetricsError::Empty);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(MetricsError::NonFinite);
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(MetricsError::Confidence(confidence));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 { sorted[n / 2] } else { (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0 };
    let (sd, ci) = if n >= 2 {
        let sd = sample_variance(values.iter().copied()).sqrt();
        (Some(sd), Some(mean_ci(mean, sd, n, confidence)?))
    } else {
        (None, None)
    };
    Ok(DescriptiveStats {
        n,
        mean,
        median,
        sd,
        ci_low: ci.map(|c| c.0),
        ci_high: ci.map(|c| c.1),
        confidence,
    })
}
