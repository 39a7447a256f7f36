use std::io::Read;

use serde::{Deserialize, Serialize};

use super::MetricsError;

/// Respondents x items matrix of integer responses on a declared scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyMatrix {
    #[serde(default)]
    pub items: Vec<String>,
    pub responses: Vec<Vec<i64>>,
    pub scale_min: i64,
    pub scale_max: i64,
}

impl SurveyMatrix {
    pub fn new(responses: Vec<Vec<i64>>, scale_min: i64, scale_max: i64) -> Result<SurveyMatrix, MetricsError> {
        let k = responses.first().map_or(0, Vec::len);
        let m = SurveyMatrix { items: (1..=k).map(|i| format!("item{i}")).collect(), responses, scale_min, scale_max };
        m.validate()?;
        Ok(m)
    }

    /// CSV with a header row of item ids and one row per respondent.
    pub fn from_csv<R: Read>(reader: R, scale_min: i64, scale_max: i64) -> Result<SurveyMatrix, MetricsError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let items: Vec<String> = rdr.headers().map_err(csv_err)?.iter().map(String::from).collect();
        let mut responses = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let values = rec
                .iter()
                .enumerate()
                .map(|(col, cell)| {
                    cell.parse::<i64>().map_err(|_| MetricsError::Csv(format!("row {row}, column {col}: '{cell}' is not an integer")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            responses.push(values);
        }
        let m = SurveyMatrix { items, responses, scale_min, scale_max };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), MetricsError> {
        if self.scale_min > self.scale_max {
            return Err(MetricsError::Scale { min: self.scale_min, max: self.scale_max });
        }
        let k = self.responses.first().map_or(0, Vec::len);
        if !self.items.is_empty() && self.items.len() != k {
            return Err(MetricsError::Ragged { row: 0, expected: self.items.len(), got: k });
        }
        for (row, r) in self.responses.iter().enumerate() {
            if r.len() != k {
                return Err(MetricsError::Ragged { row, expected: k, got: r.len() });
            }
            if let Some((col, &v)) = r.iter().enumerate().find(|(_, v)| !(self.scale_min..=self.scale_max).contains(v)) {
                return Err(MetricsError::CellOutOfRange { row, col, value: v });
            }
        }
        Ok(())
    }

    pub fn respondents(&self) -> usize {
        self.responses.len()
    }

    pub fn item_count(&self) -> usize {
        self.responses.first().map_or(0, Vec::len)
    }
}

fn csv_err(e: csv::Error) -> MetricsError {
    MetricsError::Csv(e.to_string())
}

pub(crate) fn sample_variance(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

/// `k/(k-1) * (1 - sum of item variances / variance of totals)`, with
/// sample (n-1) variances.
pub fn cronbach_alpha(m: &SurveyMatrix) -> Result<f64, MetricsError> {
    m.validate()?;
    let (n, k) = (m.respondents(), m.item_count());
    if n < 2 || k < 2 {
        return Err(MetricsError::TooSmall { respondents: n, items: k });
    }
    let item_var_sum: f64 =
        (0..k).map(|j| sample_variance(m.responses.iter().map(move |r| r[j] as f64))).sum();
    let totals: Vec<f64> = m.responses.iter().map(|r| r.iter().sum::<i64>() as f64).collect();
    let total_var = sample_variance(totals.iter().copied());
    if total_var == 0.0 {
        return Err(MetricsError::ZeroVariance);
    }
    let k = k as f64;
    Ok(k / (k - 1.0) * (1.0 - item_var_sum / total_var))
}
