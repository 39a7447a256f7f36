//! Keystroke-Level Model compilation.
//!
//! Every step is modeled in two phases: *reach* the element (point at it or
//! Tab to it) and *manipulate* it (type, click, pick an option). Pointing is
//! either a constant P or a Fitts' law estimate from the element geometry.
//! Mental operators are placed afterwards by a configurable rule. Durations
//! are integer microseconds so totals are exact sums.

mod compile;
mod explain;
mod fitts;
mod mental;
mod trace;

pub use compile::{compile_manipulate, compile_reach, pointing_time, ModelContext, PointerState};
pub use explain::{explain_trace, ExplanationRecord};
pub use fitts::{fitts_movement_time, index_of_difficulty};
pub use mental::place_mental_operators;
pub use trace::{FittsTerms, ModelResult, Operator, OperatorCode, Phase, SettingsEcho, TraceEntry};

use thiserror::Error;

use crate::model::{
    validate_task, ElementKind, FittsCoefficients, FormDocument, MentalPlacementRule, Micros, ModelError,
    OperatorTable, Strategy, TaskSpec, UserProfile, Violation,
};

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("task is not executable: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidTask(Vec<Violation>),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("degenerate pointing target width {0}")]
    DegenerateTarget(f64),
    #[error("invalid pointing distance {0}")]
    InvalidDistance(f64),
    #[error("step {step}: action '{action}' does not apply to a {kind}")]
    ActionMismatch { step: usize, action: &'static str, kind: ElementKind },
}

/// Models `task` on `doc` and returns the full operator trace with totals.
pub fn model_task(
    doc: &FormDocument,
    task: &TaskSpec,
    profile: &UserProfile,
    strategy: &Strategy,
    table: &OperatorTable,
    rule: MentalPlacementRule,
    fitts: Option<FittsCoefficients>,
) -> Result<ModelResult, EngineError> {
    profile.validate()?;
    let micros = table.to_micros()?;
    if let Some(c) = &fitts {
        c.validate()?;
    }
    doc.validate()?;
    let violations = validate_task(doc, task);
    if !violations.is_empty() {
        return Err(EngineError::InvalidTask(violations));
    }

    let ctx = ModelContext { doc, profile: *profile, strategy, table: micros, fitts };
    let mut state = PointerState::default();
    let mut entries = Vec::with_capacity(task.steps.len() * 2);
    for (i, step) in task.steps.iter().enumerate() {
        let (reach, next) = compile_reach(&ctx, i, step, &state)?;
        let response = match task.response_times.get(i) {
            Some(&r) => Micros::from_secs_f64(r).unwrap_or(Micros::ZERO),
            None => micros.response,
        };
        let (manipulate, next) = compile_manipulate(&ctx, i, step, response, &next)?;
        entries.push(reach);
        entries.push(manipulate);
        state = next;
    }
    let entries = place_mental_operators(entries, rule, &micros, profile);

    Ok(ModelResult::new(
        entries,
        SettingsEcho {
            profile: *profile,
            strategy: strategy.clone(),
            mental_rule: rule,
            fitts_enabled: fitts.is_some(),
            fitts,
            operator_table: *table,
        },
    ))
}
