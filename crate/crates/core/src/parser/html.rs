use std::collections::HashSet;

use scraper::{ElementRef, Html, Selector};
use serde::{Deserialize, Serialize};

use crate::model::{ElementKind, FormDocument, FormElement};

/// A parsed document plus anything worth telling the user about the input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseOutcome {
    pub document: FormDocument,
    pub diagnostics: Vec<String>,
}

/// Decodes raw bytes (lossily) and parses them.
pub fn parse_html_bytes(bytes: &[u8], source: &str) -> ParseOutcome {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_html(s, source),
        Err(e) => {
            let text = String::from_utf8_lossy(bytes);
            let mut out = parse_html(&text, source);
            out.diagnostics.insert(0, format!("input is not valid UTF-8 ({e}); decoded lossily"));
            out
        }
    }
}

/// Extracts every supported control inside `<form>` elements, in document
/// order. Multiple forms are concatenated; `form_index` records which form
/// an element came from.
///
/// Labels come from, in order: `<label for=...>`, an enclosing `<label>`,
/// the caption of a button, `placeholder`, `name`, then `id`.
pub fn parse_html(html: &str, source: &str) -> ParseOutcome {
    let mut diagnostics = Vec::new();
    if html.trim().is_empty() {
        diagnostics.push("empty input document".to_string());
        return ParseOutcome {
            document: FormDocument { source: source.to_string(), ..Default::default() },
            diagnostics,
        };
    }

    let page = Html::parse_document(html);
    diagnostics.extend(page.errors.iter().map(|e| format!("html: {e}")));

    let title = page
        .select(&sel("title"))
        .next()
        .map(|t| normalize_ws(&t.text().collect::<String>()))
        .unwrap_or_default();

    let forms: Vec<ElementRef> = page.select(&sel("form")).collect();
    if forms.is_empty() {
        diagnostics.push("no <form> element found".to_string());
    }

    let labels_for: Vec<(String, String)> = page
        .select(&sel("label[for]"))
        .filter_map(|l| Some((l.value().attr("for")?.to_string(), control_free_text(l))))
        .collect();

    let mut drafts = Vec::new();
    let mut outside = 0usize;
    for control in page.select(&sel("input, select, textarea, button")) {
        let Some(form_index) = enclosing_form(control, &forms) else {
            outside += 1;
            continue;
        };
        let Some(kind) = classify(control, &mut diagnostics) else { continue };
        let v = control.value();
        let options = match kind {
            ElementKind::Select => select_options(control),
            _ => Vec::new(),
        };
        if kind == ElementKind::Select && options.is_empty() {
            diagnostics.push(format!("skipped <select> '{}' without options", describe(control)));
            continue;
        }
        let label = resolve_label(control, kind, &labels_for);
        let options = if kind == ElementKind::Radio {
            let value = v.attr("value").map(normalize_ws).filter(|s| !s.is_empty());
            vec![value.unwrap_or_else(|| if label.is_empty() { "on".into() } else { label.clone() })]
        } else {
            options
        };
        let tabindex = v.attr("tabindex").and_then(|t| t.trim().parse::<i64>().ok()).unwrap_or(0);
        drafts.push(Draft {
            id_attr: v.attr("id").map(str::trim).filter(|s| !s.is_empty()).map(String::from),
            name: v.attr("name").map(str::trim).filter(|s| !s.is_empty()).map(String::from),
            kind,
            label,
            form_index,
            options,
            tabindex,
        });
    }
    if outside > 0 {
        diagnostics.push(format!("ignored {outside} control(s) outside any <form>"));
    }

    let focus = focus_order(&drafts);
    let mut used = HashSet::new();
    let elements = drafts
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let base = match (&d.id_attr, &d.name) {
                (Some(id), _) => id.clone(),
                (None, Some(name)) if d.kind == ElementKind::Radio => format!("{name}-{}", d.options[0]),
                (None, Some(name)) => name.clone(),
                (None, None) => format!("{}-{i}", d.kind),
            };
            let id = unique_id(base, &mut used);
            FormElement {
                id,
                kind: d.kind,
                label: d.label,
                name: d.name,
                form_index: d.form_index,
                focus_index: focus[i],
                options: d.options,
                geometry: None,
            }
        })
        .collect();

    ParseOutcome {
        document: FormDocument { source: source.to_string(), title, elements },
        diagnostics,
    }
}

struct Draft {
    id_attr: Option<String>,
    name: Option<String>,
    kind: ElementKind,
    label: String,
    form_index: usize,
    options: Vec<String>,
    tabindex: i64,
}

fn sel(s: &str) -> Selector {
    Selector::parse(s).expect("static selector")
}

fn normalize_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn describe(el: ElementRef) -> String {
    let v = el.value();
    v.attr("id").or(v.attr("name")).unwrap_or(v.name()).to_string()
}

fn enclosing_form(el: ElementRef, forms: &[ElementRef]) -> Option<usize> {
    let form = el.ancestors().filter_map(ElementRef::wrap).find(|a| a.value().name() == "form")?;
    forms.iter().position(|f| f.id() == form.id())
}

fn classify(el: ElementRef, diagnostics: &mut Vec<String>) -> Option<ElementKind> {
    let v = el.value();
    match v.name() {
        "textarea" => Some(ElementKind::TextArea),
        "select" => Some(ElementKind::Select),
        "button" => match v.attr("type").map(|t| t.trim().to_ascii_lowercase()).as_deref() {
            Some("button") | Some("reset") => Some(ElementKind::Button),
            _ => Some(ElementKind::Submit),
        },
        "input" => {
            let ty = v.attr("type").map(|t| t.trim().to_ascii_lowercase()).unwrap_or_default();
            match ty.as_str() {
                "" | "text" | "email" | "number" | "tel" | "url" | "search" => Some(ElementKind::TextInput),
                "password" => Some(ElementKind::Password),
                "checkbox" => Some(ElementKind::Checkbox),
                "radio" => Some(ElementKind::Radio),
                "submit" | "image" => Some(ElementKind::Submit),
                "button" | "reset" => Some(ElementKind::Button),
                "hidden" => None,
                other => {
                    diagnostics.push(format!("skipped unsupported input type '{other}' ('{}')", describe(el)));
                    None
                }
            }
        }
        _ => None,
    }
}

fn select_options(el: ElementRef) -> Vec<String> {
    el.select(&sel("option"))
        .map(|o| {
            let text = normalize_ws(&o.text().collect::<String>());
            if !text.is_empty() {
                return text;
            }
            let v = o.value();
            v.attr("label").or(v.attr("value")).map(normalize_ws).unwrap_or_default()
        })
        .collect()
}

/// Text of a label, leaving out text that belongs to controls nested in it.
fn control_free_text(label: ElementRef) -> String {
    let mut out = String::new();
    for node in label.descendants() {
        let Some(text) = node.value().as_text() else { continue };
        let inside_control = node
            .ancestors()
            .take_while(|a| a.id() != label.id())
            .filter_map(ElementRef::wrap)
            .any(|a| matches!(a.value().name(), "select" | "textarea" | "button" | "option"));
        if !inside_control {
            out.push_str(text);
            out.push(' ');
        }
    }
    normalize_ws(&out)
}

fn resolve_label(el: ElementRef, kind: ElementKind, labels_for: &[(String, String)]) -> String {
    let v = el.value();
    let non_empty = |s: String| if s.is_empty() { None } else { Some(s) };
    let by_for = v
        .attr("id")
        .and_then(|id| labels_for.iter().find(|(f, t)| f == id && !t.is_empty()))
        .map(|(_, t)| t.clone());
    let wrapping = || {
        el.ancestors()
            .filter_map(ElementRef::wrap)
            .find(|a| a.value().name() == "label")
            .map(control_free_text)
            .and_then(non_empty)
    };
    let caption = || match kind {
        ElementKind::Button | ElementKind::Submit => {
            let text = if v.name() == "button" {
                normalize_ws(&el.text().collect::<String>())
            } else {
                String::new()
            };
            non_empty(text).or_else(|| v.attr("value").map(normalize_ws).and_then(non_empty))
        }
        _ => None,
    };
    let attr = |name: &str| v.attr(name).map(normalize_ws).and_then(non_empty);
    by_for
        .or_else(wrapping)
        .or_else(caption)
        .or_else(|| attr("placeholder"))
        .or_else(|| attr("name"))
        .or_else(|| attr("id"))
        .unwrap_or_default()
}

/// Positive tabindex first (ascending), then tabindex 0 or absent, then
/// negative tabindex, each group in document order.
fn focus_order(drafts: &[Draft]) -> Vec<usize> {
    let group = |t: i64| match t {
        t if t > 0 => (0, t),
        0 => (1, 0),
        _ => (2, 0),
    };
    let mut order: Vec<usize> = (0..drafts.len()).collect();
    order.sort_by_key(|&i| (group(drafts[i].tabindex), i));
    let mut focus = vec![0; drafts.len()];
    for (pos, i) in order.into_iter().enumerate() {
        focus[i] = pos;
    }
    focus
}

fn unique_id(base: String, used: &mut HashSet<String>) -> String {
    if used.insert(base.clone()) {
        return base;
    }
    let id = (2..).map(|n| format!("{base}-{n}")).find(|c| !used.contains(c)).expect("unbounded");
    used.insert(id.clone());
    id
}
