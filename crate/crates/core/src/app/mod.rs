//! Application layer shared by the CLI and the HTTP service: settings,
//! document loading, design comparison, rendering and URL fetching.

pub mod cli;
pub mod compare;
pub mod fetch;
pub mod render;
pub mod server;
pub mod settings;

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use thiserror::Error;

use crate::engine::EngineError;
use crate::metrics::MetricsError;
use crate::model::{FormDocument, TaskSpec, Violation};
use crate::parser::{apply_layout_overrides, estimate_layout, parse_html, LayoutConfig, LayoutError, LayoutOverride};

pub use compare::{compare_designs, ComparisonReport, Delta, Design, DesignResult};
pub use fetch::FetchOptions;
pub use render::OutputFormat;
pub use settings::{ModelRequest, ModelResponse, ModelSettings};

#[derive(Debug, Error)]
pub enum AppError {
    #[error("cannot read input {path}: {msg}")]
    Input { path: String, msg: String },
    #[error("invalid task file {path}: {msg}")]
    Task { path: String, msg: String },
    #[error("task does not fit the document: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Violations(Vec<Violation>),
    #[error("fetch failed: {0}")]
    Fetch(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(EngineError),
    #[error("design '{label}': {source}")]
    Design { label: String, source: Box<EngineError> },
    #[error("{0}")]
    Compare(String),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

impl From<EngineError> for AppError {
    fn from(e: EngineError) -> AppError {
        match e {
            EngineError::InvalidTask(v) => AppError::Violations(v),
            other => AppError::Model(other),
        }
    }
}

impl From<LayoutError> for AppError {
    fn from(e: LayoutError) -> AppError {
        AppError::Config(e.to_string())
    }
}

pub mod exit {
    pub const USAGE: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const TASK: i32 = 4;
    pub const VIOLATIONS: i32 = 5;
    pub const FETCH: i32 = 6;
    pub const CONFIG: i32 = 7;
    pub const MODEL: i32 = 8;
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Input { .. } => exit::INPUT,
            AppError::Task { .. } => exit::TASK,
            AppError::Violations(_) => exit::VIOLATIONS,
            AppError::Design { source, .. } if matches!(**source, EngineError::InvalidTask(_)) => exit::VIOLATIONS,
            AppError::Fetch(_) => exit::FETCH,
            AppError::Config(_) | AppError::Compare(_) => exit::CONFIG,
            AppError::Model(_) | AppError::Design { .. } | AppError::Metrics(_) => exit::MODEL,
        }
    }

    /// Violations carried by this error, for structured error bodies.
    pub fn violations(&self) -> &[Violation] {
        match self {
            AppError::Violations(v) => v,
            AppError::Design { source, .. } => match &**source {
                EngineError::InvalidTask(v) => v,
                _ => &[],
            },
            _ => &[],
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|e| AppError::Input { path: path.display().to_string(), msg: e.to_string() })
}

/// Reads and deserializes a JSON config file; failures are config errors.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, AppError> {
    let text = fs::read_to_string(path).map_err(|e| AppError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| AppError::Config(format!("invalid JSON in {}: {e}", path.display())))
}

pub fn load_task(path: &Path) -> Result<TaskSpec, AppError> {
    let err = |msg: String| AppError::Task { path: path.display().to_string(), msg };
    let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

/// Layout inputs applied after parsing.
#[derive(Debug, Clone, Default)]
pub struct LayoutInputs {
    pub config: LayoutConfig,
    pub overrides: Option<LayoutOverride>,
}

/// A loaded document plus any parser diagnostics.
#[derive(Debug, Clone)]
pub struct LoadedDocument {
    pub document: FormDocument,
    pub diagnostics: Vec<String>,
}

/// HTML (or a JSON `FormDocument`) to a laid-out document.
///
/// Layout is estimated only for documents that lack geometry; overrides
/// always apply last.
pub fn prepare_document(text: &str, source: &str, is_json: bool, layout: &LayoutInputs) -> Result<LoadedDocument, AppError> {
    layout.config.validate()?;
    let (mut document, diagnostics) = if is_json {
        let doc: FormDocument = serde_json::from_str(text)
            .map_err(|e| AppError::Input { path: source.to_string(), msg: format!("invalid form document JSON: {e}") })?;
        (doc, Vec::new())
    } else {
        let out = parse_html(text, source);
        (out.document, out.diagnostics)
    };
    if document.elements.iter().any(|e| e.geometry.is_none()) {
        document = estimate_layout(&document, &layout.config);
    }
    if let Some(o) = &layout.overrides {
        document = apply_layout_overrides(&document, o)?;
    }
    Ok(LoadedDocument { document, diagnostics })
}

/// Reads a document from disk; `.json` files are taken as form documents.
pub fn load_document(path: &Path, layout: &LayoutInputs) -> Result<LoadedDocument, AppError> {
    let bytes = fs::read(path).map_err(|e| AppError::Input { path: path.display().to_string(), msg: e.to_string() })?;
    let text = String::from_utf8_lossy(&bytes);
    let is_json = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("json"));
    prepare_document(&text, &path.display().to_string(), is_json, layout)
}
