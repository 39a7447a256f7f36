//! Questionnaire and learning-outcome measures: SUS scoring and adjective
//! bands, Cronbach's alpha, normalized learning gain and descriptive
//! statistics with t-based confidence intervals.

mod alpha;
mod descriptive;
mod gain;
mod sus;

pub use alpha::{cronbach_alpha, SurveyMatrix};
pub use descriptive::{descriptive_stats, mean_ci, t_critical, DescriptiveStats};
pub use gain::{normalized_gain, GainInput};
pub use sus::{sus_band, sus_mean, sus_score, BandTable, SusBand, SUS_ITEMS};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("SUS needs exactly 10 responses, got {0}")]
    SusLength(usize),
    #[error("SUS item {index} has response {value}, expected 1..=5")]
    SusOutOfRange { index: usize, value: u8 },
    #[error("SUS score {0} outside 0..=100")]
    SusScoreRange(f64),
    #[error("respondent {row}: {source}")]
    Respondent { row: usize, source: Box<MetricsError> },
    #[error("invalid band table: {0}")]
    BandTable(String),
    #[error("row {row} has {got} items, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("response {value} at row {row}, column {col} is outside the scale")]
    CellOutOfRange { row: usize, col: usize, value: i64 },
    #[error("scale minimum {min} exceeds maximum {max}")]
    Scale { min: i64, max: i64 },
    #[error("alpha needs at least 2 respondents and 2 items, got {respondents} x {items}")]
    TooSmall { respondents: usize, items: usize },
    #[error("total score variance is zero; alpha is undefined")]
    ZeroVariance,
    #[error("pretest score equals the maximum {0}; no gain is possible")]
    NoPossibleGain(f64),
    #[error("scores must not exceed the maximum (pre {pre}, post {post}, max {max})")]
    AboveMax { pre: f64, post: f64, max: f64 },
    #[error("values must be finite")]
    NonFinite,
    #[error("no values")]
    Empty,
    #[error("need at least 2 values for a standard deviation, got {0}")]
    TooFewValues(usize),
    #[error("confidence {0} must be strictly between 0 and 1")]
    Confidence(f64),
    #[error("{0}")]
    Distribution(String),
    #[error("csv: {0}")]
    Csv(String),
}
