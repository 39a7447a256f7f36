use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// The interaction class of a form control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    TextInput,
    Password,
    TextArea,
    Select,
    Checkbox,
    Radio,
    Button,
    Submit,
}

impl ElementKind {
    pub const ALL: [ElementKind; 8] = [
        ElementKind::TextInput,
        ElementKind::Password,
        ElementKind::TextArea,
        ElementKind::Select,
        ElementKind::Checkbox,
        ElementKind::Radio,
        ElementKind::Button,
        ElementKind::Submit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::TextInput => "text_input",
            ElementKind::Password => "password",
            ElementKind::TextArea => "text_area",
            ElementKind::Select => "select",
            ElementKind::Checkbox => "checkbox",
            ElementKind::Radio => "radio",
            ElementKind::Button => "button",
            ElementKind::Submit => "submit",
        }
    }

    /// Kinds that accept typed text.
    pub fn is_text(self) -> bool {
        matches!(self, ElementKind::TextInput | ElementKind::Password | ElementKind::TextArea)
    }

    /// Kinds that carry an option list.
    pub fn has_options(self) -> bool {
        matches!(self, ElementKind::Select | ElementKind::Radio)
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Axis-aligned box of an element in page pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl Geometry {
    pub fn new(x: f64, y: f64, width: f64, height: f64) -> Result<Geometry, ModelError> {
        let g = Geometry { x, y, width, height };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let finite = [self.x, self.y, self.width, self.height].iter().all(|v| v.is_finite());
        if !finite || self.x < 0.0 || self.y < 0.0 || self.width <= 0.0 || self.height <= 0.0 {
            return Err(ModelError::InvalidGeometry(*self));
        }
        Ok(())
    }

    pub fn center(&self) -> Point {
        Point { x: self.x + self.width / 2.0, y: self.y + self.height / 2.0 }
    }

    /// Smallest extent, used as the effective pointing width.
    pub fn min_extent(&self) -> f64 {
        self.width.min(self.height)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormElement {
    pub id: String,
    pub kind: ElementKind,
    pub label: String,
    /// The control's `name` attribute; radios of one group share it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Zero-based index of the enclosing `<form>` on the page.
    #[serde(default)]
    pub form_index: usize,
    pub focus_index: usize,
    #[serde(default)]
    pub options: Vec<String>,
    #[serde(default)]
    pub geometry: Option<Geometry>,
}

impl FormElement {
    pub fn geometry(&self) -> Result<&Geometry, ModelError> {
        self.geometry.as_ref().ok_or_else(|| ModelError::MissingGeometry(self.id.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FormDocument {
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub elements: Vec<FormElement>,
}

impl FormDocument {
    pub fn element(&self, id: &str) -> Option<&FormElement> {
        self.elements.iter().find(|e| e.id == id)
    }

    pub fn element_or_err(&self, id: &str) -> Result<&FormElement, ModelError> {
        self.element(id).ok_or_else(|| ModelError::UnknownElement(id.to_string()))
    }

    /// Checks structural invariants of a document built outside the parser.
    pub fn validate(&self) -> Result<(), ModelError> {
        let mut ids = HashSet::new();
        let mut focus = vec![false; self.elements.len()];
        for el in &self.elements {
            if !ids.insert(el.id.as_str()) {
                return Err(ModelError::DuplicateId(el.id.clone()));
            }
            match focus.get_mut(el.focus_index) {
                Some(seen @ false) => *seen = true,
                _ => return Err(ModelError::FocusOrder(el.id.clone())),
            }
            if el.kind.has_options() == el.options.is_empty() {
                return Err(ModelError::OptionsMismatch(el.id.clone()));
            }
            if let Some(g) = &el.geometry {
                g.validate()?;
            }
        }
        Ok(())
    }
}
