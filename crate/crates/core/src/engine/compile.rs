//! Turns one task step into its reach and manipulate operator sequences.

use serde::{Deserialize, Serialize};

use crate::model::{
    focus_distance, Action, Device, ElementKind, FittsCoefficients, FormDocument, FormElement, Geometry,
    Micros, OperatorMicros, Point, Strategy, TaskStep, UserProfile,
};

use super::fitts::{fitts_movement_time, index_of_difficulty};
use super::trace::{FittsTerms, Operator, OperatorCode, Phase, TraceEntry};
use super::EngineError;

/// Where the hands and pointer are between operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointerState {
    pub position: Point,
    pub hands: Device,
    /// Element holding keyboard focus, `None` before the first reach.
    pub focus: Option<String>,
}

impl Default for PointerState {
    fn default() -> Self {
        PointerState { position: Point::ORIGIN, hands: Device::Keyboard, focus: None }
    }
}

/// Read-only inputs shared by every step of one modeling run.
#[derive(Debug, Clone)]
pub struct ModelContext<'a> {
    pub doc: &'a FormDocument,
    pub profile: UserProfile,
    pub strategy: &'a Strategy,
    pub table: OperatorMicros,
    pub fitts: Option<FittsCoefficients>,
}

/// Formats a pixel or bit quantity with at most two decimals.
pub(crate) fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn multiplier_note(m: f64) -> String {
    if m == 1.0 {
        String::new()
    } else {
        format!(" x{} motor", num(m))
    }
}

/// A P operator from the current pointer position to the center of
/// `target`, with effective width `min(width, height)`.
pub fn pointing_time(
    state: &PointerState,
    target: &Geometry,
    table: &OperatorMicros,
    fitts: Option<&FittsCoefficients>,
    profile: &UserProfile,
) -> Result<(Operator, PointerState), EngineError> {
    point_to(state, target.center(), target.min_extent(), table, fitts, profile, String::from("point"))
}

fn point_to(
    state: &PointerState,
    to: Point,
    width: f64,
    table: &OperatorMicros,
    fitts: Option<&FittsCoefficients>,
    profile: &UserProfile,
    detail: String,
) -> Result<(Operator, PointerState), EngineError> {
    let m = profile.motor_multiplier;
    let op = match fitts {
        Some(c) => {
            let distance = state.position.distance(&to);
            let mt = fitts_movement_time(distance, width, c)?;
            let id = index_of_difficulty(distance, width);
            let duration = Micros::from_secs_f64(mt * m).ok_or(EngineError::InvalidDistance(distance))?;
            Operator {
                code: OperatorCode::P,
                duration,
                detail,
                rationale: format!(
                    "Fitts: D={}px W={}px ID={}b MT={:.6}s{}",
                    num(distance),
                    num(width),
                    num(id),
                    mt,
                    multiplier_note(m)
                ),
                typing: false,
                fitts: Some(FittsTerms { distance, width, index_of_difficulty: id, movement_time: mt }),
            }
        }
        None => Operator {
            code: OperatorCode::P,
            duration: table.pointing.scale(m),
            detail,
            rationale: format!("constant pointing time P={}{} (Fitts off)", table.pointing, multiplier_note(m)),
            typing: false,
            fitts: None,
        },
    };
    let next = PointerState { position: to, ..state.clone() };
    Ok((op, next))
}

/// Accumulates operators for one phase while threading the state.
struct PhaseBuilder<'c, 'a> {
    ctx: &'c ModelContext<'a>,
    state: PointerState,
    ops: Vec<Operator>,
}

impl<'c, 'a> PhaseBuilder<'c, 'a> {
    fn new(ctx: &'c ModelContext<'a>, state: &PointerState) -> Self {
        PhaseBuilder { ctx, state: state.clone(), ops: Vec::new() }
    }

    fn motor(&self, base: Micros) -> Micros {
        base.scale(self.ctx.profile.motor_multiplier)
    }

    fn hands(&mut self, device: Device) {
        if self.state.hands == device {
            return;
        }
        let from = self.state.hands;
        self.ops.push(Operator {
            code: OperatorCode::H,
            duration: self.motor(self.ctx.table.homing),
            detail: format!("home to {device}"),
            rationale: format!("homing: hands move {from} -> {device}{}", multiplier_note(self.ctx.profile.motor_multiplier)),
            typing: false,
            fitts: None,
        });
        self.state.hands = device;
    }

    fn key(&mut self, detail: String, rationale: String, typing: bool) {
        self.hands(Device::Keyboard);
        let skill = self.ctx.profile.typing_skill;
        self.ops.push(Operator {
            code: OperatorCode::K,
            duration: self.motor(self.ctx.table.keystroke(skill)),
            detail,
            rationale: format!("{rationale} ({skill} K)"),
            typing,
            fitts: None,
        });
    }

    fn click(&mut self, detail: String, rationale: &str) {
        self.hands(Device::Mouse);
        self.ops.push(Operator {
            code: OperatorCode::BB,
            duration: self.motor(self.ctx.table.click),
            detail,
            rationale: format!("mouse click: {rationale}"),
            typing: false,
            fitts: None,
        });
    }

    fn point(&mut self, to: Point, width: f64, detail: String) -> Result<(), EngineError> {
        self.hands(Device::Mouse);
        let (op, next) =
            point_to(&self.state, to, width, &self.ctx.table, self.ctx.fitts.as_ref(), &self.ctx.profile, detail)?;
        self.ops.push(op);
        self.state = next;
        Ok(())
    }

    /// Points at `el` unless the pointer already rests on its center.
    fn point_if_needed(&mut self, el: &FormElement, g: &Geometry) -> Result<(), EngineError> {
        if self.state.position != g.center() {
            self.point(g.center(), g.min_extent(), format!("point to #{}", el.id))?;
        }
        Ok(())
    }

    fn finish(self, step_index: usize, element_id: &str, phase: Phase) -> (TraceEntry, PointerState) {
        (TraceEntry::new(step_index, element_id, phase, self.ops), self.state)
    }
}

/// Moves focus or pointer to the step's element.
pub fn compile_reach(
    ctx: &ModelContext,
    step_index: usize,
    step: &TaskStep,
    state: &PointerState,
) -> Result<(TraceEntry, PointerState), EngineError> {
    let el = ctx.doc.element_or_err(&step.element_id)?;
    let (reach, _) = ctx.strategy.devices_for(step_index);
    let mut b = PhaseBuilder::new(ctx, state);
    match reach {
        Device::Mouse => {
            let g = el.geometry()?;
            b.point(g.center(), g.min_extent(), format!("point to #{}", el.id))?;
        }
        Device::Keyboard => {
            let from = state.focus.as_deref();
            let presses = focus_distance(ctx.doc, from, &el.id)?;
            let backward = match from {
                Some(f) => ctx.doc.element_or_err(f)?.focus_index > el.focus_index,
                None => false,
            };
            let key = if backward { "Shift+Tab" } else { "Tab" };
            for n in 1..=presses {
                b.key(key.to_string(), format!("reach by keyboard: {key} {n} of {presses} to #{}", el.id), false);
            }
        }
    }
    b.state.focus = Some(el.id.clone());
    Ok(b.finish(step_index, &el.id, Phase::Reach))
}

fn needs_shift(c: char) -> bool {
    c.is_uppercase() || "~!@#$%^&*()_+{}|:\"<>?".contains(c)
}

fn display_char(c: char) -> String {
    match c {
        '\t' => "Tab".into(),
        ' ' => "Space".into(),
        c => format!("'{c}'"),
    }
}

/// Operates the element that the reach phase brought into focus.
pub fn compile_manipulate(
    ctx: &ModelContext,
    step_index: usize,
    step: &TaskStep,
    response: Micros,
    state: &PointerState,
) -> Result<(TraceEntry, PointerState), EngineError> {
    let el = ctx.doc.element_or_err(&step.element_id)?;
    if !step.action.admits(el.kind) {
        return Err(EngineError::ActionMismatch {
            step: step_index,
            action: step.action.name(),
            kind: el.kind,
        });
    }
    let (_, fill) = ctx.strategy.devices_for(step_index);
    let mut b = PhaseBuilder::new(ctx, state);
    match &step.action {
        Action::Type { value } => {
            let text = value.replace("\r\n", "\n");
            for c in text.chars() {
                if c == '\n' {
                    b.key("Enter".into(), "line break".into(), false);
                    continue;
                }
                if ctx.table.shift_surcharge && needs_shift(c) {
                    b.key(format!("Shift for {}", display_char(c)), "Shift surcharge".into(), true);
                }
                b.key(format!("type {}", display_char(c)), "typing keystroke".into(), true);
            }
        }
        Action::SelectOption { index } if el.kind == ElementKind::Select => {
            let option = &el.options[*index];
            match fill {
                Device::Mouse => {
                    let g = el.geometry()?;
                    b.point_if_needed(el, g)?;
                    b.click(format!("open #{}", el.id), "open the drop-down list");
                    let c = g.center();
                    let to = Point { x: c.x, y: c.y + (*index as f64 + 1.0) * g.height };
                    b.point(to, g.height, format!("point to option '{option}'"))?;
                    b.click(format!("choose '{option}'"), "choose the option");
                }
                Device::Keyboard => {
                    let presses = index + 1;
                    for n in 1..=presses {
                        b.key("Down".into(), format!("arrow {n} of {presses} to option '{option}'"), false);
                    }
                    b.key("Enter".into(), format!("confirm option '{option}'"), false);
                }
            }
        }
        action => {
            let (key, what) = match action {
                Action::Press => ("Enter", "press"),
                Action::Toggle => ("Space", "toggle"),
                _ => ("Space", "select"),
            };
            match fill {
                Device::Mouse => {
                    let g = el.geometry()?;
                    b.point_if_needed(el, g)?;
                    b.click(format!("click #{}", el.id), &format!("{what} {}", el.kind));
                }
                Device::Keyboard => {
                    b.key(key.into(), format!("{what} {} with {key}", el.kind), false);
                }
            }
        }
    }
    if response > Micros::ZERO {
        b.ops.push(Operator {
            code: OperatorCode::R,
            duration: response,
            detail: "wait".into(),
            rationale: format!("system response {response} s"),
            typing: false,
            fitts: None,
        });
    }
    Ok(b.finish(step_index, &el.id, Phase::Manipulate))
}
