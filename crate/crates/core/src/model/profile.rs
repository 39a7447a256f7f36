//! Modeled-user parameters: typing skill, age multipliers, operator times,
//! Fitts coefficients, interaction strategy and mental-operator placement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::time::Micros;
use super::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypingSkill {
    Expert,
    Skilled,
    Average,
    #[serde(rename = "nontypist", alias = "non_typist")]
    NonTypist,
}

impl TypingSkill {
    /// Best to worst.
    pub const ALL: [TypingSkill; 4] =
        [TypingSkill::Expert, TypingSkill::Skilled, TypingSkill::Average, TypingSkill::NonTypist];

    pub fn as_str(self) -> &'static str {
        match self {
            TypingSkill::Expert => "expert",
            TypingSkill::Skilled => "skilled",
            TypingSkill::Average => "average",
            TypingSkill::NonTypist => "nontypist",
        }
    }
}

impl FromStr for TypingSkill {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TypingSkill::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown typing skill '{s}'"))
    }
}

impl fmt::Display for TypingSkill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub typing_skill: TypingSkill,
    /// Age adjustment for K, P, BB and H.
    #[serde(default = "one")]
    pub motor_multiplier: f64,
    /// Age adjustment for M.
    #[serde(default = "one")]
    pub cognitive_multiplier: f64,
}

impl Default for UserProfile {
    fn default() -> Self {
        UserProfile::new(TypingSkill::Skilled)
    }
}

impl UserProfile {
    pub fn new(typing_skill: TypingSkill) -> UserProfile {
        UserProfile { typing_skill, motor_multiplier: 1.0, cognitive_multiplier: 1.0 }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [("motor", self.motor_multiplier), ("cognitive", self.cognitive_multiplier)] {
            if !v.is_finite() || v < 1.0 {
                return Err(ModelError::InvalidProfile(format!(
                    "{name} multiplier must be a finite number >= 1.0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Keystroke time per typing skill, in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeystrokeTimes {
    pub expert: f64,
    pub skilled: f64,
    pub average: f64,
    #[serde(alias = "non_typist")]
    pub nontypist: f64,
}

impl KeystrokeTimes {
    pub fn get(&self, skill: TypingSkill) -> f64 {
        match skill {
            TypingSkill::Expert => self.expert,
            TypingSkill::Skilled => self.skilled,
            TypingSkill::Average => self.average,
            TypingSkill::NonTypist => self.nontypist,
        }
    }
}

impl Default for KeystrokeTimes {
    fn default() -> Self {
        KeystrokeTimes { expert: 0.12, skilled: 0.20, average: 0.28, nontypist: 1.20 }
    }
}

/// Operator durations in seconds. Every field is configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OperatorTable {
    /// K
    pub keystroke: KeystrokeTimes,
    /// P, used when Fitts' law is off.
    pub pointing: f64,
    /// H
    pub homing: f64,
    /// M
    pub mental: f64,
    /// BB, press and release.
    pub click: f64,
    /// R, used for steps without an explicit response time.
    pub response: f64,
    /// Charge an extra K for characters that need Shift.
    pub shift_surcharge: bool,
}

impl Default for OperatorTable {
    fn default() -> Self {
        OperatorTable {
            keystroke: KeystrokeTimes::default(),
            pointing: 1.1,
            homing: 0.4,
            mental: 1.35,
            click: 0.2,
            response: 0.0,
            shift_surcharge: false,
        }
    }
}

impl OperatorTable {
    pub fn validate(&self) -> Result<(), ModelError> {
        self.to_micros().map(|_| ())
    }

    /// Converts every entry to microseconds once, checking invariants.
    pub fn to_micros(&self) -> Result<OperatorMicros, ModelError> {
        let conv = |name: &str, v: f64| {
            Micros::from_secs_f64(v).ok_or_else(|| {
                ModelError::InvalidOperatorTable(format!("{name} must be a finite number >= 0, got {v}"))
            })
        };
        let k = &self.keystroke;
        let keystroke = [
            conv("keystroke.expert", k.expert)?,
            conv("keystroke.skilled", k.skilled)?,
            conv("keystroke.average", k.average)?,
            conv("keystroke.nontypist", k.nontypist)?,
        ];
        if !keystroke.windows(2).all(|w| w[0] < w[1]) {
            return Err(ModelError::InvalidOperatorTable(
                "keystroke times must strictly increase from expert to nontypist".into(),
            ));
        }
        Ok(OperatorMicros {
            keystroke,
            pointing: conv("pointing", self.pointing)?,
            homing: conv("homing", self.homing)?,
            mental: conv("mental", self.mental)?,
            click: conv("click", self.click)?,
            response: conv("response", self.response)?,
            shift_surcharge: self.shift_surcharge,
        })
    }
}

/// [`OperatorTable`] in microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorMicros {
    keystroke: [Micros; 4],
    pub pointing: Micros,
    pub homing: Micros,
    pub mental: Micros,
    pub click: Micros,
    pub response: Micros,
    pub shift_surcharge: bool,
}

impl OperatorMicros {
    pub fn keystroke(&self, skill: TypingSkill) -> Micros {
        self.keystroke[skill as usize]
    }
}

/// Fitts' law intercept `a` (s) and slope `b` (s/bit).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittsCoefficients {
    pub a: f64,
    pub b: f64,
}

impl Default for FittsCoefficients {
    fn default() -> Self {
        FittsCoefficients { a: 0.1, b: 0.15 }
    }
}

impl FittsCoefficients {
    pub fn new(a: f64, b: f64) -> Result<FittsCoefficients, ModelError> {
        let c = FittsCoefficients { a, b };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a >= 0.0 && self.b > 0.0) {
            return Err(ModelError::InvalidFitts { a: self.a, b: self.b });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Device {
    Mouse,
    Keyboard,
}

impl fmt::Display for Device {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Device::Mouse => "mouse",
            Device::Keyboard => "keyboard",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum StrategyKind {
    /// Point at each element, fill it from the keyboard.
    #[default]
    #[serde(rename = "mouse-keyboard")]
    MouseReachKeyboardFill,
    /// Tab between elements, fill from the keyboard.
    #[serde(rename = "keyboard")]
    KeyboardOnly,
    /// Point and click everything; text still needs the keyboard.
    #[serde(rename = "mouse")]
    MouseOnly,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] =
        [StrategyKind::MouseReachKeyboardFill, StrategyKind::KeyboardOnly, StrategyKind::MouseOnly];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyKind::MouseReachKeyboardFill => "mouse-keyboard",
            StrategyKind::KeyboardOnly => "keyboard",
            StrategyKind::MouseOnly => "mouse",
        }
    }

    pub fn devices(self) -> (Device, Device) {
        match self {
            StrategyKind::MouseReachKeyboardFill => (Device::Mouse, Device::Keyboard),
            StrategyKind::KeyboardOnly => (Device::Keyboard, Device::Keyboard),
            StrategyKind::MouseOnly => (Device::Mouse, Device::Mouse),
        }
    }
}

impl FromStr for StrategyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown strategy '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DeviceOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reach: Option<Device>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fill: Option<Device>,
}

/// Base strategy plus optional per-step device overrides keyed by step index.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "StrategyRepr")]
pub struct Strategy {
    pub kind: StrategyKind,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<usize, DeviceOverride>,
}

// Accepts either `"keyboard"` or `{"kind": "keyboard", "overrides": {...}}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum StrategyRepr {
    Kind(StrategyKind),
    Full {
        #[serde(default)]
        kind: StrategyKind,
        #[serde(default)]
        overrides: BTreeMap<String, DeviceOverride>,
    },
}

impl TryFrom<StrategyRepr> for Strategy {
    type Error = String;
    fn try_from(r: StrategyRepr) -> Result<Self, Self::Error> {
        match r {
            StrategyRepr::Kind(kind) => Ok(Strategy::new(kind)),
            StrategyRepr::Full { kind, overrides } => {
                let overrides = overrides
                    .into_iter()
                    .map(|(k, v)| {
                        k.trim().parse::<usize>().map(|i| (i, v)).map_err(|_| format!("override key '{k}' is not a step index"))
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Strategy { kind, overrides })
            }
        }
    }
}

impl Strategy {
    pub fn new(kind: StrategyKind) -> Strategy {
        Strategy { kind, overrides: BTreeMap::new() }
    }

    /// Reach and fill devices for step `i`.
    pub fn devices_for(&self, i: usize) -> (Device, Device) {
        let (reach, fill) = self.kind.devices();
        match self.overrides.get(&i) {
            Some(o) => (o.reach.unwrap_or(reach), o.fill.unwrap_or(fill)),
            None => (reach, fill),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MentalPlacementRule {
    /// One M at the start of every step.
    #[default]
    #[serde(rename = "per-element")]
    OncePerElement,
    /// One M per step plus one before every later typing burst in the step.
    #[serde(rename = "per-chunk")]
    PerChunk,
    #[serde(rename = "none")]
    None,
}

impl MentalPlacementRule {
    pub const ALL: [MentalPlacementRule; 3] =
        [MentalPlacementRule::OncePerElement, MentalPlacementRule::PerChunk, MentalPlacementRule::None];

    pub fn as_str(self) -> &'static str {
        match self {
            MentalPlacementRule::OncePerElement => "per-element",
            MentalPlacementRule::PerChunk => "per-chunk",
            MentalPlacementRule::None => "none",
        }
    }
}

impl FromStr for MentalPlacementRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MentalPlacementRule::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown mental placement rule '{s}'"))
    }
}
