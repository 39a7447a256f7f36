//! Predicts expert, error-free completion time of web form-filling tasks
//! with the Keystroke-Level Model and Fitts' law.
//!
//! The pipeline is: [`parser::parse_html`] a page, give its controls
//! geometry with [`parser::estimate_layout`] (optionally corrected by
//! [`parser::apply_layout_overrides`]), describe the task as a
//! [`model::TaskSpec`], then run [`engine::model_task`] to get an
//! operator-level trace and total time.
//!
//! [`metrics`] holds questionnaire scoring (SUS, Cronbach's alpha,
//! normalized gain, descriptive statistics) and [`app`] the CLI and HTTP
//! front ends.

pub mod app;
pub mod engine;
pub mod metrics;
pub mod model;
pub mod parser;
