use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use klmfa_ffi::*;

const FORM: &str = r#"<form><input id="name"><input type="checkbox" id="agree"><button id="go">Go</button></form>"#;
const TASK: &str = r#"{"steps":[
    {"element_id":"name","action":{"type":"type","value":"abc"}},
    {"element_id":"agree","action":{"type":"toggle"}},
    {"element_id":"go","action":{"type":"press"}}]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = klm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn parse(html: &str) -> *mut KlmDocument {
    let mut doc = ptr::null_mut();
    let html = c(html);
    let st = unsafe { klm_document_parse_html(html.as_ptr(), ptr::null(), ptr::null(), &mut doc) };
    assert_eq!(st, KlmStatus::Ok);
    doc
}

#[test]
fn parse_model_and_free() {
    let doc = parse(FORM);
    assert_eq!(unsafe { klm_document_element_count(doc) }, 3);

    let mut res = ptr::null_mut();
    let task = c(TASK);
    let settings = c(r#"{"strategy":"keyboard","profile":{"typing_skill":"expert"}}"#);
    let st = unsafe { klm_model(doc, task.as_ptr(), settings.as_ptr(), &mut res) };
    assert_eq!(st, KlmStatus::Ok);

    // Same run through the core library.
    let core_doc = klmfa::parser::estimate_layout(&klmfa::parser::parse_html(FORM, "inline").document, &Default::default());
    let core_settings: klmfa::app::ModelSettings =
        serde_json::from_str(r#"{"strategy":"keyboard","profile":{"typing_skill":"expert"}}"#).unwrap();
    let expected = core_settings.run(&core_doc, &serde_json::from_str(TASK).unwrap()).unwrap();

    unsafe {
        assert_eq!(klm_result_total_us(res), expected.total_us);
        assert_eq!(klm_result_total_seconds(res), expected.total_time.as_secs_f64());
        assert_eq!(klm_result_operator_count(res), expected.operators().count());
        let mut js = ptr::null_mut();
        assert_eq!(klm_result_to_json(res, &mut js), KlmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(js).to_str().unwrap()).unwrap();
        assert_eq!(v["total_us"], expected.total_us);
        klm_string_free(js);
        klm_result_free(res);
        klm_document_free(doc);
    }
}

#[test]
fn invalid_task_reports_code_and_message() {
    let doc = parse(FORM);
    let mut res = ptr::null_mut();
    let task = c(r#"{"steps":[{"element_id":"ghost","action":{"type":"press"}}]}"#);
    let st = unsafe { klm_model(doc, task.as_ptr(), ptr::null(), &mut res) };
    assert_eq!(st, KlmStatus::InvalidTask);
    assert!(res.is_null());
    assert!(last_error().contains("ghost"));
    unsafe { klm_document_free(doc) };
}

#[test]
fn null_and_bad_json_inputs() {
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { klm_document_parse_html(ptr::null(), ptr::null(), ptr::null(), &mut doc) }, KlmStatus::NullPointer);
    assert!(last_error().contains("html"));
    let bad = c("{not json");
    assert_eq!(unsafe { klm_document_from_json(bad.as_ptr(), &mut doc) }, KlmStatus::InvalidJson);
    assert!(doc.is_null());
    unsafe {
        assert_eq!(klm_document_element_count(ptr::null()), 0);
        assert_eq!(klm_result_total_us(ptr::null()), 0);
        klm_document_free(ptr::null_mut());
        klm_result_free(ptr::null_mut());
        klm_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    let mut doc = ptr::null_mut();
    let bad = c("{");
    unsafe { klm_document_from_json(bad.as_ptr(), &mut doc) };
    assert!(!klm_last_error_message().is_null());
    let doc = parse(FORM);
    assert!(klm_last_error_message().is_null());
    unsafe { klm_document_free(doc) };
}

#[test]
fn json_round_trip_and_overrides() {
    let doc = parse(FORM);
    unsafe {
        let o = c(r#"{"name":{"x":1,"y":2,"width":30,"height":10}}"#);
        assert_eq!(klm_document_apply_overrides(doc, o.as_ptr()), KlmStatus::Ok);
        let unknown = c(r#"{"nope":{"x":1,"y":2,"width":30,"height":10}}"#);
        assert_eq!(klm_document_apply_overrides(doc, unknown.as_ptr()), KlmStatus::InvalidDocument);

        let mut js = ptr::null_mut();
        assert_eq!(klm_document_to_json(doc, &mut js), KlmStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(klm_document_from_json(js, &mut back), KlmStatus::Ok);
        let mut js2 = ptr::null_mut();
        assert_eq!(klm_document_to_json(back, &mut js2), KlmStatus::Ok);
        assert_eq!(CStr::from_ptr(js), CStr::from_ptr(js2));
        assert!(CStr::from_ptr(js).to_str().unwrap().contains(r#""width":30.0"#));
        klm_string_free(js);
        klm_string_free(js2);
        klm_document_free(back);
        klm_document_free(doc);
    }
}

#[test]
fn scalar_functions() {
    let mut x = 0.0;
    unsafe {
        assert_eq!(klm_fitts_movement_time(210.0, 30.0, 0.1, 0.15, &mut x), KlmStatus::Ok);
        assert!((x - 0.55).abs() < 1e-9);
        assert_eq!(klm_fitts_movement_time(10.0, 0.0, 0.1, 0.15, &mut x), KlmStatus::ModelError);

        let best = [5u8, 1, 5, 1, 5, 1, 5, 1, 5, 1];
        assert_eq!(klm_sus_score(best.as_ptr(), best.len(), &mut x), KlmStatus::Ok);
        assert_eq!(x, 100.0);
        assert_eq!(klm_sus_score(best.as_ptr(), 9, &mut x), KlmStatus::MetricsError);

        let m = [1i64, 1, 2, 2, 3, 3, 4, 4];
        assert_eq!(klm_cronbach_alpha(m.as_ptr(), 4, 2, 1, 5, &mut x), KlmStatus::Ok);
        assert!((x - 1.0).abs() < 1e-12);

        assert_eq!(klm_normalized_gain(50.0, 75.0, 100.0, &mut x), KlmStatus::Ok);
        assert_eq!(x, 50.0);
        assert_eq!(klm_normalized_gain(100.0, 100.0, 100.0, &mut x), KlmStatus::MetricsError);

        assert_eq!(CStr::from_ptr(klm_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/klmfa.h")
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(header()).unwrap();
    for f in [
        "klm_document_parse_html",
        "klm_document_from_json",
        "klm_document_element_count",
        "klm_document_apply_overrides",
        "klm_document_to_json",
        "klm_document_free",
        "klm_model",
        "klm_result_total_us",
        "klm_result_total_seconds",
        "klm_result_operator_count",
        "klm_result_to_json",
        "klm_result_free",
        "klm_fitts_movement_time",
        "klm_sus_score",
        "klm_cronbach_alpha",
        "klm_normalized_gain",
        "klm_last_error_message",
        "klm_string_free",
        "klm_version",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    if !have_cc() {
        eprintln!("cc not available; skipping header compile check");
        return;
    }
    let out = Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"]).arg(header()).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_and_matches_core() {
    let deps = std::env::current_exe().unwrap();
    let lib_dir = deps.parent().and_then(Path::parent).unwrap().to_path_buf();
    if !have_cc() || !lib_dir.join("libklmfa_ffi.so").exists() {
        eprintln!("cc or shared library not available; skipping C link check");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/smoke.c");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg("-L")
        .arg(&lib_dir)
        .args(["-lklmfa_ffi", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).env("LD_LIBRARY_PATH", &lib_dir).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let total: u64 = String::from_utf8(run.stdout).unwrap().trim().parse().unwrap();

    let html = r#"<form><input id="q"><button id="go">Go</button></form>"#;
    let doc = klmfa::parser::estimate_layout(&klmfa::parser::parse_html(html, "smoke").document, &Default::default());
    let task = r#"{"steps":[{"element_id":"q","action":{"type":"type","value":"hi"}},{"element_id":"go","action":{"type":"press"}}]}"#;
    let settings: klmfa::app::ModelSettings = serde_json::from_str(r#"{"fitts":{"a":0.1,"b":0.15}}"#).unwrap();
    assert_eq!(total, settings.run(&doc, &serde_json::from_str(task).unwrap()).unwrap().total_us);
}
