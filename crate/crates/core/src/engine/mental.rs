use crate::model::{MentalPlacementRule, OperatorMicros, UserProfile};

use super::trace::{Operator, OperatorCode, Phase, TraceEntry};

fn mental(table: &OperatorMicros, profile: &UserProfile, detail: &str, rationale: String) -> Operator {
    Operator {
        code: OperatorCode::M,
        duration: table.mental.scale(profile.cognitive_multiplier),
        detail: detail.to_string(),
        rationale,
        typing: false,
        fitts: None,
    }
}

/// Inserts M operators into a trace compiled without them and recomputes
/// phase times.
///
/// * `OncePerElement`: one M at the start of every step's reach phase.
/// * `PerChunk`: as above, plus one M before every typing burst of a step
///   other than its first. A burst is a run of typing keystrokes; it ends at
///   any other operator (a line break, for instance).
/// * `None`: no change.
pub fn place_mental_operators(
    entries: Vec<TraceEntry>,
    rule: MentalPlacementRule,
    table: &OperatorMicros,
    profile: &UserProfile,
) -> Vec<TraceEntry> {
    if rule == MentalPlacementRule::None {
        return entries;
    }
    let mut out = Vec::with_capacity(entries.len());
    let mut current_step = None;
    let mut bursts_seen = 0usize;
    for mut entry in entries {
        if current_step != Some(entry.step_index) {
            current_step = Some(entry.step_index);
            bursts_seen = 0;
        }
        let mut ops = Vec::with_capacity(entry.operators.len() + 1);
        if entry.phase == Phase::Reach {
            ops.push(mental(
                table,
                profile,
                "think",
                format!("mental preparation for step {} ({} rule)", entry.step_index + 1, rule.as_str()),
            ));
        }
        let mut prev_typing = false;
        for op in entry.operators {
            if rule == MentalPlacementRule::PerChunk && op.typing && !prev_typing {
                if bursts_seen > 0 {
                    ops.push(mental(
                        table,
                        profile,
                        "think",
                        format!("mental preparation for typing chunk {} of step {}", bursts_seen + 1, entry.step_index + 1),
                    ));
                }
                bursts_seen += 1;
            }
            prev_typing = op.typing;
            ops.push(op);
        }
        entry.operators = ops;
        entry.recompute();
        out.push(entry);
    }
    out
}
