use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::engine::{EngineError, ModelResult};
use crate::model::{FormDocument, TaskSpec};

use super::settings::ModelSettings;
use super::AppError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Design {
    pub label: String,
    pub document: FormDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignResult {
    pub label: String,
    pub result: ModelResult,
}

/// `total(to) - total(from)`; negative when `to` is faster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    pub from: String,
    pub to: String,
    pub delta_us: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub results: Vec<DesignResult>,
    /// One entry per unordered pair, in input order.
    pub deltas: Vec<Delta>,
    /// Fastest design; ties go to the one listed first.
    pub winner: String,
}

impl ComparisonReport {
    /// Signed difference between any two labels, in either direction.
    pub fn delta(&self, from: &str, to: &str) -> Option<i64> {
        let total = |l: &str| self.results.iter().find(|r| r.label == l).map(|r| r.result.total_time);
        Some(total(to)?.signed_diff(total(from)?))
    }
}

/// Models the same task on every design and ranks them by total time.
pub fn compare_designs(designs: &[Design], task: &TaskSpec, settings: &ModelSettings) -> Result<ComparisonReport, AppError> {
    if designs.len() < 2 {
        return Err(AppError::Compare(format!("need at least 2 designs, got {}", designs.len())));
    }
    let mut seen = HashSet::new();
    if let Some(dup) = designs.iter().find(|d| !seen.insert(d.label.as_str())) {
        return Err(AppError::Compare(format!("duplicate design label '{}'", dup.label)));
    }
    let results = designs
        .iter()
        .map(|d| {
            settings
                .run(&d.document, task)
                .map(|result| DesignResult { label: d.label.clone(), result })
                .map_err(|source| AppError::Design { label: d.label.clone(), source: Box::new(source) })
        })
        .collect::<Result<Vec<_>, AppError>>()?;

    let mut deltas = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            deltas.push(Delta {
                from: a.label.clone(),
                to: b.label.clone(),
                delta_us: b.result.total_time.signed_diff(a.result.total_time),
            });
        }
    }
    let winner = results
        .iter()
        .min_by_key(|r| r.result.total_time)
        .map(|r| r.label.clone())
        .expect("at least two designs");
    Ok(ComparisonReport { results, deltas, winner })
}

impl AppError {
    /// The engine error behind a per-design failure, if any.
    pub fn engine_error(&self) -> Option<&EngineError> {
        match self {
            AppError::Model(e) => Some(e),
            AppError::Design { source, .. } => Some(source),
            _ => None,
        }
    }
}
