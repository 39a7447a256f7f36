//! C ABI over the `klmfa` core.
//!
//! Documents and results are opaque heap handles released with their
//! `_free` function. Every call returns a [`KlmStatus`]; on failure the
//! message is available from [`klm_last_error_message`] on the same thread.
//! Strings handed out by the library must be released with
//! [`klm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use klmfa::app::ModelSettings;
use klmfa::engine::{fitts_movement_time, ModelResult};
use klmfa::metrics::{cronbach_alpha, normalized_gain, sus_score, GainInput, SurveyMatrix};
use klmfa::model::{FittsCoefficients, FormDocument, TaskSpec};
use klmfa::parser::{apply_layout_overrides, estimate_layout, parse_html, LayoutConfig, LayoutOverride};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidDocument = 4,
    InvalidTask = 5,
    ModelError = 6,
    MetricsError = 7,
    Panic = 99,
}

/// Parsed form document with geometry.
pub struct KlmDocument {
    inner: FormDocument,
}

/// Output of a modeling run.
pub struct KlmResult {
    inner: ModelResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

type Res<T> = Result<T, (KlmStatus, String)>;

fn guard(f: impl FnOnce() -> Res<()>) -> KlmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            KlmStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KlmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err((KlmStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (KlmStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn opt_str_arg<'a>(p: *const c_char, name: &str) -> Res<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, name).map(Some)
    }
}

fn json<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Res<T> {
    serde_json::from_str(s).map_err(|e| (KlmStatus::InvalidJson, format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Res<&'a mut T> {
    p.as_mut().ok_or((KlmStatus::NullPointer, format!("{name} is null")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul removed").into_raw()
}

fn layout_doc(doc: FormDocument, config_json: Option<&str>) -> Res<FormDocument> {
    let config: LayoutConfig = match config_json {
        Some(s) => json(s, "layout config")?,
        None => LayoutConfig::default(),
    };
    config.validate().map_err(|e| (KlmStatus::InvalidDocument, e.to_string()))?;
    if doc.elements.iter().any(|e| e.geometry.is_none()) {
        Ok(estimate_layout(&doc, &config))
    } else {
        Ok(doc)
    }
}

/// Parses HTML and estimates layout. `layout_json` may be null for defaults.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn klm_document_parse_html(
    html: *const c_char,
    source: *const c_char,
    layout_json: *const c_char,
    out_doc: *mut *mut KlmDocument,
) -> KlmStatus {
    guard(|| {
        let slot = out(out_doc, "out_doc")?;
        *slot = ptr::null_mut();
        let html = str_arg(html, "html")?;
        let source = opt_str_arg(source, "source")?.unwrap_or("inline");
        let parsed = parse_html(html, source).document;
        let doc = layout_doc(parsed, opt_str_arg(layout_json, "layout_json")?)?;
        *slot = Box::into_raw(Box::new(KlmDocument { inner: doc }));
        Ok(())
    })
}

/// Loads a form document from JSON, estimating layout if geometry is missing.
///
/// # Safety
/// See [`klm_document_parse_html`].
#[no_mangle]
pub unsafe extern "C" fn klm_document_from_json(json_text: *const c_char, out_doc: *mut *mut KlmDocument) -> KlmStatus {
    guard(|| {
        let slot = out(out_doc, "out_doc")?;
        *slot = ptr::null_mut();
        let doc: FormDocument = json(str_arg(json_text, "json")?, "document")?;
        let doc = layout_doc(doc, None)?;
        doc.validate().map_err(|e| (KlmStatus::InvalidDocument, e.to_string()))?;
        *slot = Box::into_raw(Box::new(KlmDocument { inner: doc }));
        Ok(())
    })
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `doc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn klm_document_element_count(doc: *const KlmDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.inner.elements.len())
}

/// Replaces geometry of the named elements with a JSON `{id: geometry}` map.
///
/// # Safety
/// `doc` must be a live handle; `overrides_json` a valid string.
#[no_mangle]
pub unsafe extern "C" fn klm_document_apply_overrides(doc: *mut KlmDocument, overrides_json: *const c_char) -> KlmStatus {
    guard(|| {
        let d = out(doc, "doc")?;
        let o: LayoutOverride = json(str_arg(overrides_json, "overrides_json")?, "overrides")?;
        d.inner = apply_layout_overrides(&d.inner, &o).map_err(|e| (KlmStatus::InvalidDocument, e.to_string()))?;
        Ok(())
    })
}

/// Serializes the document; free the string with [`klm_string_free`].
///
/// # Safety
/// `doc` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn klm_document_to_json(doc: *const KlmDocument, out_json: *mut *mut c_char) -> KlmStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        *slot = ptr::null_mut();
        let d = doc.as_ref().ok_or((KlmStatus::NullPointer, "doc is null".to_string()))?;
        *slot = into_c_string(serde_json::to_string(&d.inner).expect("serializable"));
        Ok(())
    })
}

/// # Safety
/// `doc` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn klm_document_free(doc: *mut KlmDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Models a task. `settings_json` may be null for default settings.
///
/// # Safety
/// `doc` must be a live handle; strings valid or null where allowed.
#[no_mangle]
pub unsafe extern "C" fn klm_model(
    doc: *const KlmDocument,
    task_json: *const c_char,
    settings_json: *const c_char,
    out_result: *mut *mut KlmResult,
) -> KlmStatus {
    guard(|| {
        let slot = out(out_result, "out_result")?;
        *slot = ptr::null_mut();
        let d = doc.as_ref().ok_or((KlmStatus::NullPointer, "doc is null".to_string()))?;
        let task: TaskSpec = json(str_arg(task_json, "task_json")?, "task")?;
        let settings: ModelSettings = match opt_str_arg(settings_json, "settings_json")? {
            Some(s) => json(s, "settings")?,
            None => ModelSettings::default(),
        };
        let result = settings.run(&d.inner, &task).map_err(|e| match e {
            klmfa::engine::EngineError::InvalidTask(_) => (KlmStatus::InvalidTask, e.to_string()),
            other => (KlmStatus::ModelError, other.to_string()),
        })?;
        *slot = Box::into_raw(Box::new(KlmResult { inner: result }));
        Ok(())
    })
}

/// Total time in integer microseconds, or 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn klm_result_total_us(result: *const KlmResult) -> u64 {
    result.as_ref().map_or(0, |r| r.inner.total_us)
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn klm_result_total_seconds(result: *const KlmResult) -> f64 {
    result.as_ref().map_or(0.0, |r| r.inner.total_time.as_secs_f64())
}

/// Number of operators in the trace.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn klm_result_operator_count(result: *const KlmResult) -> usize {
    result.as_ref().map_or(0, |r| r.inner.operators().count())
}

/// Serializes the full result; free the string with [`klm_string_free`].
///
/// # Safety
/// `result` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn klm_result_to_json(result: *const KlmResult, out_json: *mut *mut c_char) -> KlmStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        *slot = ptr::null_mut();
        let r = result.as_ref().ok_or((KlmStatus::NullPointer, "result is null".to_string()))?;
        *slot = into_c_string(serde_json::to_string(&r.inner).expect("serializable"));
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn klm_result_free(result: *mut KlmResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Fitts movement time in seconds.
///
/// # Safety
/// `out_seconds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn klm_fitts_movement_time(distance: f64, width: f64, a: f64, b: f64, out_seconds: *mut f64) -> KlmStatus {
    guard(|| {
        let slot = out(out_seconds, "out_seconds")?;
        let c = FittsCoefficients::new(a, b).map_err(|e| (KlmStatus::ModelError, e.to_string()))?;
        *slot = fitts_movement_time(distance, width, &c).map_err(|e| (KlmStatus::ModelError, e.to_string()))?;
        Ok(())
    })
}

/// SUS score of one respondent's ten responses.
///
/// # Safety
/// `responses` must point to `len` bytes; `out_score` must be valid.
#[no_mangle]
pub unsafe extern "C" fn klm_sus_score(responses: *const u8, len: usize, out_score: *mut f64) -> KlmStatus {
    guard(|| {
        let slot = out(out_score, "out_score")?;
        if responses.is_null() {
            return Err((KlmStatus::NullPointer, "responses is null".into()));
        }
        let r = std::slice::from_raw_parts(responses, len);
        *slot = sus_score(r).map_err(|e| (KlmStatus::MetricsError, e.to_string()))?;
        Ok(())
    })
}

/// Cronbach's alpha of a row-major `respondents x items` matrix.
///
/// # Safety
/// `values` must point to `respondents * items` integers.
#[no_mangle]
pub unsafe extern "C" fn klm_cronbach_alpha(
    values: *const i64,
    respondents: usize,
    items: usize,
    scale_min: i64,
    scale_max: i64,
    out_alpha: *mut f64,
) -> KlmStatus {
    guard(|| {
        let slot = out(out_alpha, "out_alpha")?;
        if values.is_null() {
            return Err((KlmStatus::NullPointer, "values is null".into()));
        }
        let n = respondents.checked_mul(items).ok_or((KlmStatus::MetricsError, "matrix too large".to_string()))?;
        let flat = std::slice::from_raw_parts(values, n);
        let rows = if items == 0 { Vec::new() } else { flat.chunks(items).map(<[i64]>::to_vec).collect() };
        let m = SurveyMatrix::new(rows, scale_min, scale_max).map_err(|e| (KlmStatus::MetricsError, e.to_string()))?;
        *slot = cronbach_alpha(&m).map_err(|e| (KlmStatus::MetricsError, e.to_string()))?;
        Ok(())
    })
}

/// Normalized gain in percent.
///
/// # Safety
/// `out_percent` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn klm_normalized_gain(pre: f64, post: f64, max: f64, out_percent: *mut f64) -> KlmStatus {
    guard(|| {
        let slot = out(out_percent, "out_percent")?;
        *slot = normalized_gain(&GainInput { pre, post, max }).map_err(|e| (KlmStatus::MetricsError, e.to_string()))?;
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn klm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn klm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn klm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
