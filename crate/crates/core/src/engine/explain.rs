use serde::{Deserialize, Serialize};

use crate::model::Micros;

use super::trace::{ModelResult, OperatorCode, Phase};

/// One line of the step-by-step explanation: which operator, where, how
/// long, and the rule that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplanationRecord {
    pub step_index: usize,
    pub element_id: String,
    pub phase: Phase,
    pub code: OperatorCode,
    pub duration: Micros,
    pub detail: String,
    pub rationale: String,
}

pub fn explain_trace(result: &ModelResult) -> Vec<ExplanationRecord> {
    result
        .entries
        .iter()
        .flat_map(|e| {
            e.operators.iter().map(move |o| ExplanationRecord {
                step_index: e.step_index,
                element_id: e.element_id.clone(),
                phase: e.phase,
                code: o.code,
                duration: o.duration,
                detail: o.detail.clone(),
                rationale: o.rationale.clone(),
            })
        })
        .collect()
}
