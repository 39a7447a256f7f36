use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{FittsCoefficients, MentalPlacementRule, Micros, OperatorTable, Strategy, UserProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorCode {
    K,
    P,
    H,
    M,
    BB,
    R,
}

impl OperatorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorCode::K => "K",
            OperatorCode::P => "P",
            OperatorCode::H => "H",
            OperatorCode::M => "M",
            OperatorCode::BB => "BB",
            OperatorCode::R => "R",
        }
    }
}

impl fmt::Display for OperatorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The inputs and output of a Fitts' law evaluation behind a P operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittsTerms {
    pub distance: f64,
    pub width: f64,
    pub index_of_difficulty: f64,
    /// Unadjusted movement time, seconds.
    pub movement_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Operator {
    pub code: OperatorCode,
    pub duration: Micros,
    pub detail: String,
    pub rationale: String,
    /// Set on keystrokes that enter text; used to find typing bursts.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub typing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitts: Option<FittsTerms>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Reach,
    Manipulate,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Reach => "reach",
            Phase::Manipulate => "manipulate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step_index: usize,
    pub element_id: String,
    pub phase: Phase,
    pub operators: Vec<Operator>,
    pub phase_time: Micros,
}

impl TraceEntry {
    pub fn new(step_index: usize, element_id: impl Into<String>, phase: Phase, operators: Vec<Operator>) -> TraceEntry {
        let mut e = TraceEntry { step_index, element_id: element_id.into(), phase, operators, phase_time: Micros::ZERO };
        e.recompute();
        e
    }

    pub fn recompute(&mut self) {
        self.phase_time = self.operators.iter().map(|o| o.duration).sum();
    }
}

/// Everything that shaped a result, echoed back with it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingsEcho {
    pub profile: UserProfile,
    pub strategy: Strategy,
    pub mental_rule: MentalPlacementRule,
    pub fitts_enabled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitts: Option<FittsCoefficients>,
    pub operator_table: OperatorTable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelResult {
    pub entries: Vec<TraceEntry>,
    /// Seconds.
    pub total_time: Micros,
    /// The same total in integer microseconds.
    pub total_us: u64,
    pub per_element_time: BTreeMap<String, Micros>,
    pub settings: SettingsEcho,
}

impl ModelResult {
    pub fn new(entries: Vec<TraceEntry>, settings: SettingsEcho) -> ModelResult {
        let mut per_element_time = BTreeMap::new();
        for e in &entries {
            *per_element_time.entry(e.element_id.clone()).or_insert(Micros::ZERO) += e.phase_time;
        }
        let total_time: Micros = entries.iter().map(|e| e.phase_time).sum();
        ModelResult { entries, total_time, total_us: total_time.as_micros(), per_element_time, settings }
    }

    pub fn operators(&self) -> impl Iterator<Item = &Operator> {
        self.entries.iter().flat_map(|e| e.operators.iter())
    }

    pub fn count(&self, code: OperatorCode) -> usize {
        self.operators().filter(|o| o.code == code).count()
    }

    pub fn step_count(&self) -> usize {
        self.entries.iter().map(|e| e.step_index + 1).max().unwrap_or(0)
    }
}
