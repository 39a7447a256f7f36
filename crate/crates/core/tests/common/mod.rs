//! Helpers shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use klmfa::app::ModelSettings;
use klmfa::engine::{ModelResult, OperatorCode};
use klmfa::model::{
    Action, Device, DeviceOverride, ElementKind, FittsCoefficients, FormDocument, FormElement, Geometry,
    MentalPlacementRule, OperatorTable, Strategy, StrategyKind, TaskSpec, TaskStep, TypingSkill, UserProfile,
};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- generators

const CHARS: &[char] = &['a', 'b', 'z', 'Q', 'X', '1', '7', ' ', '@', '.', '\n'];

pub fn random_document(r: &mut ChaCha8Rng, n: usize) -> FormDocument {
    let mut focus: Vec<usize> = (0..n).collect();
    focus.shuffle(r);
    let elements = (0..n)
        .map(|i| {
            let kind = ElementKind::ALL[r.random_range(0..ElementKind::ALL.len())];
            let options = match kind {
                ElementKind::Select => (0..r.random_range(1..6)).map(|k| format!("opt{k}")).collect(),
                ElementKind::Radio => vec![format!("v{i}")],
                _ => Vec::new(),
            };
            let geometry = Geometry::new(
                r.random_range(0.0..900.0),
                r.random_range(0.0..1200.0),
                r.random_range(8.0..320.0),
                r.random_range(8.0..60.0),
            )
            .unwrap();
            FormElement {
                id: format!("e{i}"),
                kind,
                label: format!("Element {i}"),
                name: None,
                form_index: 0,
                focus_index: focus[i],
                options,
                geometry: Some(geometry),
            }
        })
        .collect();
    FormDocument { source: "random".into(), title: String::new(), elements }
}

pub fn action_for(r: &mut ChaCha8Rng, el: &FormElement) -> Action {
    match el.kind {
        k if k.is_text() => {
            let len = r.random_range(0..12);
            Action::Type { value: (0..len).map(|_| CHARS[r.random_range(0..CHARS.len())]).collect() }
        }
        ElementKind::Select | ElementKind::Radio => Action::SelectOption { index: r.random_range(0..el.options.len()) },
        ElementKind::Checkbox => Action::Toggle,
        _ => Action::Press,
    }
}

pub fn random_task(r: &mut ChaCha8Rng, doc: &FormDocument, steps: usize) -> TaskSpec {
    if doc.elements.is_empty() {
        return TaskSpec::default();
    }
    let steps: Vec<TaskStep> = (0..steps)
        .map(|_| {
            let el = &doc.elements[r.random_range(0..doc.elements.len())];
            TaskStep::new(el.id.clone(), action_for(r, el))
        })
        .collect();
    let response_times = if r.random_bool(0.3) {
        (0..steps.len()).map(|_| if r.random_bool(0.5) { 0.0 } else { r.random_range(0.0..2.0) }).collect()
    } else {
        Vec::new()
    };
    TaskSpec { steps, response_times }
}

/// A task touching every element once, in document order.
pub fn full_task(r: &mut ChaCha8Rng, doc: &FormDocument) -> TaskSpec {
    TaskSpec::new(doc.elements.iter().map(|el| TaskStep::new(el.id.clone(), action_for(r, el))).collect())
}

pub fn random_settings(r: &mut ChaCha8Rng, steps: usize) -> ModelSettings {
    let kind = StrategyKind::ALL[r.random_range(0..3)];
    let mut overrides = BTreeMap::new();
    if steps > 0 && r.random_bool(0.3) {
        let dev = |r: &mut ChaCha8Rng| match r.random_range(0..3) {
            0 => None,
            1 => Some(Device::Mouse),
            _ => Some(Device::Keyboard),
        };
        overrides.insert(r.random_range(0..steps), DeviceOverride { reach: dev(r), fill: dev(r) });
    }
    let profile = UserProfile {
        typing_skill: TypingSkill::ALL[r.random_range(0..4)],
        motor_multiplier: if r.random_bool(0.5) { 1.0 } else { r.random_range(1.0..2.0) },
        cognitive_multiplier: if r.random_bool(0.5) { 1.0 } else { r.random_range(1.0..2.0) },
    };
    let operator_table = OperatorTable {
        shift_surcharge: r.random_bool(0.3),
        response: if r.random_bool(0.2) { 0.25 } else { 0.0 },
        ..OperatorTable::default()
    };
    let fitts = r.random_bool(0.5).then(|| FittsCoefficients::new(r.random_range(0.0..0.3), r.random_range(0.05..0.3)).unwrap());
    ModelSettings {
        profile,
        strategy: Strategy { kind, overrides },
        operator_table,
        fitts,
        mental_rule: MentalPlacementRule::ALL[r.random_range(0..3)],
    }
}

// ---------------------------------------------------------------- oracles

fn us(secs: f64) -> u64 {
    (secs * 1e6).round() as u64
}

fn scaled(base_secs: f64, m: f64) -> u64 {
    (us(base_secs) as f64 * m).round() as u64
}

/// Recomputes every operator duration from the settings alone and returns
/// the brute-force total, or a description of the first mismatch.
pub fn oracle_total(result: &ModelResult, task: &TaskSpec, s: &ModelSettings) -> Result<u64, String> {
    let t = &s.operator_table;
    let p = &s.profile;
    let k = t.keystroke.get(p.typing_skill);
    let mut total: u64 = 0;
    for e in &result.entries {
        for o in &e.operators {
            let expected = match o.code {
                OperatorCode::K => scaled(k, p.motor_multiplier),
                OperatorCode::H => scaled(t.homing, p.motor_multiplier),
                OperatorCode::BB => scaled(t.click, p.motor_multiplier),
                OperatorCode::M => scaled(t.mental, p.cognitive_multiplier),
                OperatorCode::R => match task.response_times.get(e.step_index) {
                    Some(&r) => us(r),
                    None => us(t.response),
                },
                OperatorCode::P => match (&s.fitts, &o.fitts) {
                    (Some(c), Some(f)) => {
                        let mt = c.a + c.b * (f.distance / f.width + 1.0).log2();
                        (mt * p.motor_multiplier * 1e6).round() as u64
                    }
                    (None, None) => scaled(t.pointing, p.motor_multiplier),
                    _ => return Err(format!("step {}: Fitts terms present iff Fitts enabled", e.step_index)),
                },
            };
            if o.duration.as_micros() != expected {
                return Err(format!(
                    "step {} {:?} {}: engine {} us, oracle {} us",
                    e.step_index, e.phase, o.code, o.duration.as_micros(), expected
                ));
            }
            total += expected;
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------- corpus

#[derive(Debug, Deserialize)]
pub struct ManifestElement {
    pub id: String,
    pub kind: ElementKind,
    pub label: Option<String>,
    #[serde(default)]
    pub options: Vec<String>,
    pub form_index: Option<usize>,
}

#[derive(Debug, Deserialize)]
pub struct Manifest {
    pub count: usize,
    pub elements: Vec<ManifestElement>,
    pub focus_order: Vec<String>,
    #[serde(default)]
    pub absent_names: Vec<String>,
}

pub struct CorpusForm {
    pub name: String,
    pub html: String,
    pub manifest: Manifest,
}

pub fn corpus() -> Vec<CorpusForm> {
    let dir = fixtures().join("forms");
    let mut names: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "html").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let html = fs::read_to_string(dir.join(format!("{name}.html"))).unwrap();
            let manifest = serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.json"))).unwrap())
                .unwrap_or_else(|e| panic!("{name}.json: {e}"));
            CorpusForm { name, html, manifest }
        })
        .collect()
}

/// Exact comparison of a parsed document against its manifest.
pub fn check_manifest(doc: &FormDocument, m: &Manifest) -> Result<(), String> {
    if doc.elements.len() != m.count || m.elements.len() != m.count {
        return Err(format!("count: parsed {}, manifest {}", doc.elements.len(), m.count));
    }
    for (i, (got, want)) in doc.elements.iter().zip(&m.elements).enumerate() {
        if got.id != want.id || got.kind != want.kind || got.options != want.options {
            return Err(format!(
                "element {i}: parsed ({}, {}, {:?}), manifest ({}, {}, {:?})",
                got.id, got.kind, got.options, want.id, want.kind, want.options
            ));
        }
        if let Some(l) = &want.label {
            if &got.label != l {
                return Err(format!("element {i} label: parsed '{}', manifest '{l}'", got.label));
            }
        }
        if let Some(f) = want.form_index {
            if got.form_index != f {
                return Err(format!("element {i} form_index: parsed {}, manifest {f}", got.form_index));
            }
        }
    }
    let mut by_focus: Vec<&FormElement> = doc.elements.iter().collect();
    by_focus.sort_by_key(|e| e.focus_index);
    let order: Vec<&str> = by_focus.iter().map(|e| e.id.as_str()).collect();
    if order != m.focus_order {
        return Err(format!("focus order: parsed {order:?}, manifest {:?}", m.focus_order));
    }
    for n in &m.absent_names {
        if doc.elements.iter().any(|e| e.name.as_deref() == Some(n.as_str())) {
            return Err(format!("control named '{n}' should be absent"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- golden set

#[derive(Debug, Deserialize)]
pub struct GoldenCase {
    pub name: String,
    pub form: String,
    pub task: String,
    pub settings: serde_json::Value,
    /// CLI flags equivalent to `settings`.
    pub flags: Vec<String>,
    /// Hand-computed total, when one was worked out.
    pub expected_seconds: Option<String>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let text = fs::read_to_string(fixtures().join("golden/cases.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn golden_path(file: &str) -> PathBuf {
    fixtures().join("golden").join(file)
}
