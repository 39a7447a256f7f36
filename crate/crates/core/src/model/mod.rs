//! Form structure, task specification and modeled-user vocabulary shared by
//! the parser, the engine and the application layer.

mod form;
mod profile;
mod task;
mod time;

pub use form::{ElementKind, FormDocument, FormElement, Geometry, Point};
pub use profile::{
    Device, DeviceOverride, FittsCoefficients, KeystrokeTimes, MentalPlacementRule, OperatorMicros,
    OperatorTable, Strategy, StrategyKind, TypingSkill, UserProfile,
};
pub use task::{validate_task, Action, TaskSpec, TaskStep, Violation, ViolationKind};
pub use time::{format_signed_micros, Micros};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("unknown element id '{0}'")]
    UnknownElement(String),
    #[error("duplicate element id '{0}'")]
    DuplicateId(String),
    #[error("focus_index of '{0}' breaks the 0..n permutation")]
    FocusOrder(String),
    #[error("element '{0}' must have options iff it is a select or radio")]
    OptionsMismatch(String),
    #[error("element '{0}' has no geometry; run layout estimation first")]
    MissingGeometry(String),
    #[error("invalid geometry {0:?}: width and height must be > 0, coordinates finite and >= 0")]
    InvalidGeometry(Geometry),
    #[error("invalid Fitts coefficients a={a}, b={b}: need a >= 0 and b > 0")]
    InvalidFitts { a: f64, b: f64 },
    #[error("invalid operator table: {0}")]
    InvalidOperatorTable(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

/// Tab presses needed to move focus from `from` to `to` in focus order.
///
/// With no `from` focus sits before the first element, so reaching focus
/// position `k` takes `k + 1` presses. Backward movement (Shift+Tab) costs
/// one press per position. Returns 0 when `from == to`.
pub fn focus_distance(doc: &FormDocument, from: Option<&str>, to: &str) -> Result<usize, ModelError> {
    let to = doc.element_or_err(to)?.focus_index as isize;
    let from = match from {
        Some(id) => doc.element_or_err(id)?.focus_index as isize,
        None => -1,
    };
    Ok(from.abs_diff(to))
}
