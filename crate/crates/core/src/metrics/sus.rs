//! System Usability Scale scoring and adjective banding.

use serde::{Deserialize, Serialize};

use super::MetricsError;

pub const SUS_ITEMS: usize = 10;

/// Score of one 10-item questionnaire with responses 1..=5.
///
/// Odd-numbered items (positively worded) contribute `response - 1`,
/// even-numbered items `5 - response`; the sum is scaled by 2.5.
pub fn sus_score(responses: &[u8]) -> Result<f64, MetricsError> {
    if responses.len() != SUS_ITEMS {
        return Err(MetricsError::SusLength(responses.len()));
    }
    let mut sum = 0u32;
    for (i, &r) in responses.iter().enumerate() {
        if !(1..=5).contains(&r) {
            return Err(MetricsError::SusOutOfRange { index: i, value: r });
        }
        sum += if i % 2 == 0 { u32::from(r) - 1 } else { 5 - u32::from(r) };
    }
    Ok(f64::from(sum) * 2.5)
}

/// Mean of per-respondent scores.
pub fn sus_mean(respondents: &[Vec<u8>]) -> Result<f64, MetricsError> {
    if respondents.is_empty() {
        return Err(MetricsError::Empty);
    }
    let scores = respondents
        .iter()
        .enumerate()
        .map(|(row, r)| sus_score(r).map_err(|e| MetricsError::Respondent { row, source: Box::new(e) }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SusBand {
    pub low: f64,
    pub high: f64,
    pub label: String,
}

/// Closed score intervals with labels. Where intervals share a boundary
/// the earlier entry wins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BandTable {
    pub bands: Vec<SusBand>,
}

const DEFAULT_BANDS: &str = include_str!("../../data/sus_bands.json");

impl Default for BandTable {
    fn default() -> Self {
        BandTable::from_json(DEFAULT_BANDS).expect("shipped band table is valid")
    }
}

impl BandTable {
    pub fn from_json(json: &str) -> Result<BandTable, MetricsError> {
        let table: BandTable = serde_json::from_str(json).map_err(|e| MetricsError::BandTable(e.to_string()))?;
        table.validate()?;
        Ok(table)
    }

    /// Every band must lie within 0..=100 and together they must cover it.
    pub fn validate(&self) -> Result<(), MetricsError> {
        let mut spans: Vec<(f64, f64)> = Vec::with_capacity(self.bands.len());
        for b in &self.bands {
            if !(b.low.is_finite() && b.high.is_finite() && 0.0 <= b.low && b.low <= b.high && b.high <= 100.0) {
                return Err(MetricsError::BandTable(format!("band '{}' has bad bounds", b.label)));
            }
            spans.push((b.low, b.high));
        }
        spans.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut reach = 0.0;
        for (low, high) in spans {
            if low > reach {
                return Err(MetricsError::BandTable(format!("no band covers {reach}..{low}")));
            }
            reach = f64::max(reach, high);
        }
        if reach < 100.0 {
            return Err(MetricsError::BandTable(format!("no band covers {reach}..100")));
        }
        Ok(())
    }

    pub fn classify(&self, score: f64) -> Result<&str, MetricsError> {
        if !(0.0..=100.0).contains(&score) {
            return Err(MetricsError::SusScoreRange(score));
        }
        self.bands
            .iter()
            .find(|b| b.low <= score && score <= b.high)
            .map(|b| b.label.as_str())
            .ok_or(MetricsError::SusScoreRange(score))
    }
}

/// Band label from the shipped table.
pub fn sus_band(score: f64) -> Result<String, MetricsError> {
    BandTable::default().classify(score).map(str::to_string)
}
