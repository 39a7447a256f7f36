use serde::{Deserialize, Serialize};

use crate::engine::{explain_trace, model_task, EngineError, ExplanationRecord, ModelResult};
use crate::model::{FittsCoefficients, FormDocument, MentalPlacementRule, OperatorTable, Strategy, TaskSpec, UserProfile};

/// Everything besides document and task that shapes a modeling run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ModelSettings {
    #[serde(default)]
    pub profile: UserProfile,
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default)]
    pub operator_table: OperatorTable,
    /// Fitts' law is applied to pointing when present.
    #[serde(default)]
    pub fitts: Option<FittsCoefficients>,
    #[serde(default)]
    pub mental_rule: MentalPlacementRule,
}

impl ModelSettings {
    pub fn run(&self, doc: &FormDocument, task: &TaskSpec) -> Result<ModelResult, EngineError> {
        model_task(doc, task, &self.profile, &self.strategy, &self.operator_table, self.mental_rule, self.fitts)
    }
}

/// Body of `POST /api/model`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRequest {
    pub document: FormDocument,
    pub task: TaskSpec,
    #[serde(flatten)]
    pub settings: ModelSettings,
}

/// A model result, optionally with its step-by-step explanation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelResponse {
    pub result: ModelResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explanation: Option<Vec<ExplanationRecord>>,
}

impl ModelResponse {
    pub fn new(result: ModelResult, explain: bool) -> ModelResponse {
        let explanation = explain.then(|| explain_trace(&result));
        ModelResponse { result, explanation }
    }
}
