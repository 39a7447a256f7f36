//! Deterministic single-column layout estimate and sidecar geometry overrides.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ElementKind, FormDocument, Geometry, ModelError};

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("override refers to unknown element '{0}'")]
    UnknownElement(String),
    #[error("invalid override for '{id}': {source}")]
    InvalidGeometry { id: String, source: ModelError },
    #[error("invalid layout config: {0}")]
    InvalidConfig(String),
}

/// A pixel size per element kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindSizes {
    pub text_input: u32,
    pub password: u32,
    pub text_area: u32,
    pub select: u32,
    pub checkbox: u32,
    pub radio: u32,
    pub button: u32,
    pub submit: u32,
}

impl KindSizes {
    pub fn get(&self, kind: ElementKind) -> u32 {
        match kind {
            ElementKind::TextInput => self.text_input,
            ElementKind::Password => self.password,
            ElementKind::TextArea => self.text_area,
            ElementKind::Select => self.select,
            ElementKind::Checkbox => self.checkbox,
            ElementKind::Radio => self.radio,
            ElementKind::Button => self.button,
            ElementKind::Submit => self.submit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutConfig {
    pub origin_x: u32,
    pub origin_y: u32,
    pub row_height: u32,
    pub row_gap: u32,
    pub label_column_width: u32,
    pub widths: KindSizes,
    pub heights: KindSizes,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            origin_x: 20,
            origin_y: 20,
            row_height: 40,
            row_gap: 12,
            label_column_width: 160,
            widths: KindSizes {
                text_input: 240,
                password: 240,
                text_area: 320,
                select: 200,
                checkbox: 16,
                radio: 16,
                button: 100,
                submit: 100,
            },
            heights: KindSizes {
                text_input: 28,
                password: 28,
                text_area: 40,
                select: 28,
                checkbox: 16,
                radio: 16,
                button: 32,
                submit: 32,
            },
        }
    }
}

impl LayoutConfig {
    /// Sizes must be positive and no control may be taller than its row.
    pub fn validate(&self) -> Result<(), LayoutError> {
        if self.row_height == 0 {
            return Err(LayoutError::InvalidConfig("row_height must be > 0".into()));
        }
        for kind in ElementKind::ALL {
            let (w, h) = (self.widths.get(kind), self.heights.get(kind));
            if w == 0 || h == 0 {
                return Err(LayoutError::InvalidConfig(format!("{kind} width and height must be > 0")));
            }
            if h > self.row_height {
                return Err(LayoutError::InvalidConfig(format!(
                    "{kind} height {h} exceeds row_height {}",
                    self.row_height
                )));
            }
        }
        Ok(())
    }
}

/// Places element `i` (document order) on row `i` of a single column.
/// `config` is assumed valid.
pub fn estimate_layout(doc: &FormDocument, config: &LayoutConfig) -> FormDocument {
    let mut out = doc.clone();
    let x = f64::from(config.origin_x) + f64::from(config.label_column_width);
    let pitch = f64::from(config.row_height) + f64::from(config.row_gap);
    for (i, el) in out.elements.iter_mut().enumerate() {
        el.geometry = Some(Geometry {
            x,
            y: f64::from(config.origin_y) + i as f64 * pitch,
            width: f64::from(config.widths.get(el.kind)),
            height: f64::from(config.heights.get(el.kind)),
        });
    }
    out
}

/// Element id to replacement geometry.
pub type LayoutOverride = BTreeMap<String, Geometry>;

pub fn apply_layout_overrides(doc: &FormDocument, overrides: &LayoutOverride) -> Result<FormDocument, LayoutError> {
    let mut out = doc.clone();
    for (id, geometry) in overrides {
        geometry
            .validate()
            .map_err(|source| LayoutError::InvalidGeometry { id: id.clone(), source })?;
        let el = out
            .elements
            .iter_mut()
            .find(|e| &e.id == id)
            .ok_or_else(|| LayoutError::UnknownElement(id.clone()))?;
        el.geometry = Some(*geometry);
    }
    Ok(out)
}
