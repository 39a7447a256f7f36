//! HTML form extraction and geometry estimation.

mod html;
mod layout;

pub use html::{parse_html, parse_html_bytes, ParseOutcome};
pub use layout::{apply_layout_overrides, estimate_layout, KindSizes, LayoutConfig, LayoutError, LayoutOverride};
