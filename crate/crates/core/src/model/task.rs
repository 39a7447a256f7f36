use std::fmt;

use serde::{Deserialize, Serialize};

use super::form::{ElementKind, FormDocument};

/// What the modeled user does to an element once it is reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Action {
    /// Enter text into a text control.
    Type { value: String },
    /// Choose option `index` of a select, or pick a radio button.
    #[serde(rename = "select")]
    SelectOption { index: usize },
    /// Flip a checkbox.
    Toggle,
    /// Activate a button.
    Press,
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Type { .. } => "type",
            Action::SelectOption { .. } => "select",
            Action::Toggle => "toggle",
            Action::Press => "press",
        }
    }

    pub fn admits(&self, kind: ElementKind) -> bool {
        match self {
            Action::Type { .. } => kind.is_text(),
            Action::SelectOption { .. } => kind.has_options(),
            Action::Toggle => kind == ElementKind::Checkbox,
            Action::Press => matches!(kind, ElementKind::Button | ElementKind::Submit),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskStep {
    pub element_id: String,
    pub action: Action,
}

impl TaskStep {
    pub fn new(element_id: impl Into<String>, action: Action) -> TaskStep {
        TaskStep { element_id: element_id.into(), action }
    }
}

/// Ordered element interactions to model.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TaskSpec {
    pub steps: Vec<TaskStep>,
    /// System response seconds per step. Empty means none; otherwise one
    /// entry per step.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub response_times: Vec<f64>,
}

impl TaskSpec {
    pub fn new(steps: Vec<TaskStep>) -> TaskSpec {
        TaskSpec { steps, response_times: Vec::new() }
    }

    /// Response time of step `i` in seconds, 0 when unspecified.
    pub fn response_time(&self, i: usize) -> f64 {
        self.response_times.get(i).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnknownElement,
    ActionKindMismatch,
    OptionOutOfRange,
    InvalidResponseTime,
}

/// One reason a task cannot be executed against a document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub step: usize,
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.message)
    }
}

/// Lists every constraint the task breaks against `doc`; empty means the
/// task is executable.
pub fn validate_task(doc: &FormDocument, task: &TaskSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, step) in task.steps.iter().enumerate() {
        let Some(el) = doc.element(&step.element_id) else {
            out.push(Violation {
                step: i,
                kind: ViolationKind::UnknownElement,
                message: format!("unknown element id '{}'", step.element_id),
            });
            continue;
        };
        if !step.action.admits(el.kind) {
            out.push(Violation {
                step: i,
                kind: ViolationKind::ActionKindMismatch,
                message: format!(
                    "action '{}' cannot be applied to {} element '{}'",
                    step.action.name(),
                    el.kind,
                    el.id
                ),
            });
            continue;
        }
        if let Action::SelectOption { index } = step.action {
            if index >= el.options.len() {
                out.push(Violation {
                    step: i,
                    kind: ViolationKind::OptionOutOfRange,
                    message: format!(
                        "option index {index} out of range for '{}' with {} options",
                        el.id,
                        el.options.len()
                    ),
                });
            }
        }
    }
    if !task.response_times.is_empty() && task.response_times.len() != task.steps.len() {
        out.push(Violation {
            step: task.response_times.len().min(task.steps.len()),
            kind: ViolationKind::InvalidResponseTime,
            message: format!(
                "{} response times given for {} steps",
                task.response_times.len(),
                task.steps.len()
            ),
        });
    }
    for (i, &r) in task.response_times.iter().enumerate() {
        if !r.is_finite() || r < 0.0 {
            out.push(Violation {
                step: i,
                kind: ViolationKind::InvalidResponseTime,
                message: format!("response time {r} must be a finite number >= 0"),
            });
        }
    }
    out
}
