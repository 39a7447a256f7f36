//! Acceptance runner. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fail.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use http_body_util::BodyExt;
use rand::Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use klmfa::app::server::{router, ServerConfig};
use klmfa::app::ModelSettings;
use klmfa::engine::{fitts_movement_time, OperatorCode, Phase};
use klmfa::metrics::{cronbach_alpha, normalized_gain, sus_band, sus_score, GainInput, SurveyMatrix};
use klmfa::model::{
    FittsCoefficients, FormDocument, MentalPlacementRule, Strategy, StrategyKind, TaskSpec, TaskStep, TypingSkill,
    UserProfile,
};
use klmfa::parser::{estimate_layout, parse_html, LayoutConfig};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_docs() -> Vec<(String, FormDocument)> {
    common::corpus()
        .into_iter()
        .map(|f| (f.name.clone(), estimate_layout(&parse_html(&f.html, &f.name).document, &LayoutConfig::default())))
        .collect()
}

fn trace_sum() -> Check {
    let start = Instant::now();
    let mut r = common::rng(2024);
    let cases = 500;
    let mut fitts_on = 0;
    for case in 0..cases {
        let n = r.random_range(1..10);
        let doc = common::random_document(&mut r, n);
        let steps = r.random_range(0..15);
        let task = common::random_task(&mut r, &doc, steps);
        let s = common::random_settings(&mut r, task.steps.len());
        fitts_on += usize::from(s.fitts.is_some());
        let res = s.run(&doc, &task).map_err(|e| format!("case {case}: {e}"))?;
        let oracle = common::oracle_total(&res, &task, &s).map_err(|e| format!("case {case}: {e}"))?;
        ensure(res.total_time.as_micros() == oracle, || format!("case {case}: total {} us, oracle {oracle} us", res.total_time.as_micros()))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} random cases ({fitts_on} with Fitts) match the per-operator oracle exactly in {:.2?}", elapsed))
}

fn fitts() -> Check {
    let c = FittsCoefficients::default();
    let mt = |d: f64, w: f64| fitts_movement_time(d, w, &c).map_err(|e| e.to_string());
    for w in [1.0, 7.5, 30.0, 240.0] {
        ensure(mt(w, w)? == c.a + c.b, || format!("D=W={w}: {} != a+b", mt(w, w).unwrap()))?;
        ensure(mt(0.0, w)? == c.a, || format!("D=0, W={w}: not a"))?;
    }
    let v = mt(210.0, 30.0)?;
    ensure((v - 0.55).abs() < 1e-9, || format!("(210, 30): {v}"))?;
    let ds: Vec<f64> = (0..50).map(|i| i as f64 * 20.0).collect();
    let ws: Vec<f64> = (1..=50).map(|i| i as f64 * 4.0).collect();
    for &w in &ws {
        for pair in ds.windows(2) {
            ensure(mt(pair[1], w)? > mt(pair[0], w)?, || format!("not increasing in D at W={w}, D={}", pair[1]))?;
        }
    }
    for &d in &ds[1..] {
        for pair in ws.windows(2) {
            ensure(mt(d, pair[1])? < mt(d, pair[0])?, || format!("not decreasing in W at D={d}, W={}", pair[1]))?;
        }
    }
    Ok("D=W gives a+b, D=0 gives a, (210,30) gives 0.55; monotone over a 50x50 grid".into())
}

fn strategies() -> Check {
    let mut r = common::rng(11);
    let mut reaches = 0;
    for (name, doc) in corpus_docs() {
        let task = common::full_task(&mut r, &doc);
        for f in [None, Some(FittsCoefficients::default())] {
            let kb = ModelSettings { strategy: Strategy::new(StrategyKind::KeyboardOnly), fitts: f, ..Default::default() };
            let res = kb.run(&doc, &task).map_err(|e| format!("{name}: {e}"))?;
            ensure(res.count(OperatorCode::P) == 0 && res.count(OperatorCode::BB) == 0, || format!("{name}: keyboard-only trace has P or BB"))?;
            let mk = ModelSettings { strategy: Strategy::new(StrategyKind::MouseReachKeyboardFill), fitts: f, ..Default::default() };
            let res = mk.run(&doc, &task).map_err(|e| format!("{name}: {e}"))?;
            for e in res.entries.iter().filter(|e| e.phase == Phase::Reach) {
                let p = e.operators.iter().filter(|o| o.code == OperatorCode::P).count();
                ensure(p == 1, || format!("{name} step {}: {p} P in reach phase", e.step_index))?;
                reaches += 1;
            }
        }
    }
    Ok(format!("10 fixture forms, Fitts on and off: keyboard-only has 0 P/BB; {reaches} mouse reach phases each have exactly 1 P"))
}

fn profiles() -> Check {
    let mut r = common::rng(12);
    let mut cases = 0;
    for case in 0..300 {
        let n = r.random_range(1..8);
        let doc = common::random_document(&mut r, n);
        let task = common::random_task(&mut r, &doc, 8);
        let base = common::random_settings(&mut r, task.steps.len());
        let totals = TypingSkill::ALL
            .iter()
            .map(|&k| {
                let s = ModelSettings { profile: UserProfile { typing_skill: k, ..base.profile }, ..base.clone() };
                s.run(&doc, &task).map(|res| res.total_time).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        ensure(totals.windows(2).all(|w| w[0] <= w[1]), || format!("case {case}: {totals:?}"))?;
        cases += 1;
    }
    let mut click_only = 0;
    for (name, doc) in corpus_docs() {
        let steps: Vec<TaskStep> = doc
            .elements
            .iter()
            .filter(|e| !e.kind.is_text())
            .map(|e| TaskStep::new(e.id.clone(), common::action_for(&mut r, e)))
            .collect();
        let task = TaskSpec::new(steps);
        for f in [None, Some(FittsCoefficients::default())] {
            let totals = TypingSkill::ALL
                .iter()
                .map(|&k| {
                    let s = ModelSettings { profile: UserProfile::new(k), strategy: Strategy::new(StrategyKind::MouseOnly), fitts: f, ..Default::default() };
                    s.run(&doc, &task).map(|res| res.total_time).map_err(|e| e.to_string())
                })
                .collect::<Result<Vec<_>, _>>()?;
            ensure(totals.iter().all(|t| *t == totals[0]), || format!("{name}: click-only totals differ {totals:?}"))?;
            click_only += 1;
        }
    }
    Ok(format!("{cases} random cases monotone Expert..NonTypist; {click_only} click-only runs identical across skills"))
}

fn mental() -> Check {
    let mut r = common::rng(13);
    for case in 0..300 {
        let n = r.random_range(1..8);
        let doc = common::random_document(&mut r, n);
        let steps = r.random_range(0..12);
        let task = common::random_task(&mut r, &doc, steps);
        let base = common::random_settings(&mut r, task.steps.len());
        let run = |rule| ModelSettings { mental_rule: rule, ..base.clone() }.run(&doc, &task).map_err(|e| e.to_string());
        let once = run(MentalPlacementRule::OncePerElement)?;
        let none = run(MentalPlacementRule::None)?;
        let steps = task.steps.len() as u64;
        ensure(once.count(OperatorCode::M) as u64 == steps, || format!("case {case}: {} M for {steps} steps", once.count(OperatorCode::M)))?;
        ensure(none.count(OperatorCode::M) == 0, || format!("case {case}: M under None"))?;
        let m_us = ((base.operator_table.mental * 1e6).round() * base.profile.cognitive_multiplier).round() as u64;
        let diff = once.total_time.as_micros() - none.total_time.as_micros();
        ensure(diff == steps * m_us, || format!("case {case}: difference {diff} us, expected {steps} x {m_us}"))?;
    }
    Ok("300 random cases: M count equals steps, None has 0, totals differ by steps x adjusted M exactly".into())
}

fn sus() -> Check {
    let best = sus_score(&[5, 1, 5, 1, 5, 1, 5, 1, 5, 1]).map_err(|e| e.to_string())?;
    let mid = sus_score(&[3; 10]).map_err(|e| e.to_string())?;
    let worst = sus_score(&[1, 5, 1, 5, 1, 5, 1, 5, 1, 5]).map_err(|e| e.to_string())?;
    ensure(best == 100.0 && mid == 50.0 && worst == 0.0, || format!("got {best}, {mid}, {worst}"))?;
    for s in [82.0, 71.4, 85.5] {
        let b = sus_band(s).map_err(|e| e.to_string())?;
        ensure(b == "Good to Excellent", || format!("{s} classified as {b}"))?;
    }
    Ok("100 / 50 / 0 exact; 82.0, 71.4 and 85.5 are Good to Excellent".into())
}

fn alpha_oracle(rows: &[Vec<i64>]) -> f64 {
    let n = rows.len() as f64;
    let k = rows[0].len();
    let cols: Vec<Vec<f64>> = (0..k).map(|j| rows.iter().map(|r| r[j] as f64).collect()).collect();
    let means: Vec<f64> = cols.iter().map(|c| c.iter().sum::<f64>() / n).collect();
    let (mut diag, mut all) = (0.0, 0.0);
    for i in 0..k {
        for j in 0..k {
            let c = cols[i].iter().zip(&cols[j]).map(|(x, y)| (x - means[i]) * (y - means[j])).sum::<f64>() / (n - 1.0);
            all += c;
            if i == j {
                diag += c;
            }
        }
    }
    k as f64 / (k as f64 - 1.0) * (1.0 - diag / all)
}

fn alpha() -> Check {
    let a = |rows: Vec<Vec<i64>>| {
        SurveyMatrix::new(rows, 1, 5).and_then(|m| cronbach_alpha(&m)).map_err(|e| e.to_string())
    };
    let identical = a((1..=5).map(|v| vec![v; 4]).collect())?;
    ensure((identical - 1.0).abs() < 1e-9, || format!("identical columns: {identical}"))?;
    let zero = a(vec![vec![1, 1], vec![1, 3], vec![3, 1], vec![3, 3]])?;
    ensure(zero.abs() < 1e-9, || format!("uncorrelated pair: {zero}"))?;
    let mut r = common::rng(14);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 20 {
        let rows: Vec<Vec<i64>> = (0..5).map(|_| (0..10).map(|_| r.random_range(1..=5)).collect()).collect();
        let totals: Vec<i64> = rows.iter().map(|x| x.iter().sum()).collect();
        if totals.iter().all(|t| *t == totals[0]) {
            continue;
        }
        let got = a(rows.clone())?;
        let want = alpha_oracle(&rows);
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() < 1e-9, || format!("random matrix: {got} vs oracle {want}"))?;
        done += 1;
    }
    Ok(format!("identical columns 1.0, uncorrelated pair 0.0, 20 random 5x10 matrices within {worst:.1e} of the covariance oracle"))
}

fn gain() -> Check {
    let g = |pre, post, max| normalized_gain(&GainInput { pre, post, max }).map_err(|e| e.to_string());
    ensure(g(50.0, 75.0, 100.0)? == 50.0, || "(50, 75, 100) != 50".into())?;
    for pre in [0.0, 12.5, 62.9, 99.0] {
        ensure(g(pre, pre, 100.0)? == 0.0, || format!("post == pre == {pre} not 0"))?;
        ensure(g(pre, 100.0, 100.0)? == 100.0, || format!("post == max from {pre} not 100"))?;
    }
    Ok("(50,75,100) = 50%, post==pre = 0%, post==max = 100%, all exact".into())
}

fn parser_corpus() -> Check {
    let corpus = common::corpus();
    ensure(corpus.len() == 10, || format!("{} fixtures, expected 10", corpus.len()))?;
    let (mut elements, mut absent) = (0, 0);
    for f in &corpus {
        let doc = parse_html(&f.html, &f.name).document;
        common::check_manifest(&doc, &f.manifest).map_err(|e| format!("{}: {e}", f.name))?;
        absent += f.manifest.absent_names.len();
        elements += doc.elements.len();
    }
    Ok(format!("10 fixtures, {elements} elements, ids/kinds/options/focus order match manifests; {absent} hidden/unsupported controls absent"))
}

fn total_from_text(s: &str) -> Option<String> {
    s.lines().find_map(|l| l.strip_prefix("total: ")).map(|t| t.trim_end_matches(" s").to_string())
}

fn total_from_csv(s: &str) -> Option<String> {
    let mut rdr = csv::Reader::from_reader(s.as_bytes());
    let last = rdr.records().last()?.ok()?;
    (last.get(0) == Some("total")).then(|| last.get(4).unwrap_or_default().to_string())
}

async fn http(app: &axum::Router, path: &str, body: String) -> Result<(StatusCode, Vec<u8>), String> {
    let req = Request::builder()
        .method(Method::POST)
        .uri(path)
        .header("content-type", "application/json")
        .body(Body::from(body))
        .map_err(|e| e.to_string())?;
    let resp = app.clone().oneshot(req).await.map_err(|e| e.to_string())?;
    let status = resp.status();
    let bytes = resp.into_body().collect().await.map_err(|e| e.to_string())?.to_bytes().to_vec();
    Ok((status, bytes))
}

fn parity() -> Check {
    let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    let app = router(ServerConfig::default());
    let cases = common::golden_cases();
    let mut hand_checked = 0;
    for case in &cases {
        let form = common::golden_path(&case.form);
        let task = common::golden_path(&case.task);
        let mut totals = Vec::new();
        for fmt in ["text", "json", "csv"] {
            let mut args = vec!["analyze".to_string(), "--input".into(), form.display().to_string()];
            args.extend(["--task".into(), task.display().to_string(), "--format".into(), fmt.into()]);
            args.extend(case.flags.iter().cloned());
            let out = Command::new(env!("CARGO_BIN_EXE_klmfa")).args(&args).output().map_err(|e| e.to_string())?;
            ensure(out.status.success(), || format!("{}: CLI {fmt} failed: {}", case.name, String::from_utf8_lossy(&out.stderr)))?;
            let s = String::from_utf8_lossy(&out.stdout).into_owned();
            let t = match fmt {
                "text" => total_from_text(&s),
                "csv" => total_from_csv(&s),
                _ => serde_json::from_str::<Value>(&s).ok().and_then(|v| v["result"]["total_time"].as_f64()).map(|t| format!("{t:.6}")),
            };
            totals.push(t.ok_or_else(|| format!("{}: no total in CLI {fmt} output", case.name))?);
        }

        let html = std::fs::read_to_string(&form).map_err(|e| e.to_string())?;
        let task_json: Value = serde_json::from_str(&std::fs::read_to_string(&task).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let (bodies, repeat_ok) = rt.block_on(async {
            let (s, parsed) = http(&app, "/api/parse", json!({"html": html, "source": form.display().to_string()}).to_string()).await?;
            ensure(s == StatusCode::OK, || format!("{}: parse returned {s}", case.name))?;
            let parsed: Value = serde_json::from_slice(&parsed).map_err(|e| e.to_string())?;
            let mut body = case.settings.clone();
            body["document"] = parsed["document"].clone();
            body["task"] = task_json.clone();
            let body = body.to_string();
            let (s, first) = http(&app, "/api/model", body.clone()).await?;
            ensure(s == StatusCode::OK, || format!("{}: model returned {s}", case.name))?;
            let (_, second) = http(&app, "/api/model", body).await?;
            Ok::<_, String>((first.clone(), first == second))
        })?;
        ensure(repeat_ok, || format!("{}: repeated /api/model bodies differ", case.name))?;
        let v: Value = serde_json::from_slice(&bodies).map_err(|e| e.to_string())?;
        let http_total = v["result"]["total_time"].as_f64().map(|t| format!("{t:.6}")).ok_or("no total in HTTP body")?;
        totals.push(http_total);
        ensure(totals.iter().all(|t| t == &totals[0]), || format!("{}: text/json/csv/http totals {totals:?}", case.name))?;
        if let Some(expected) = &case.expected_seconds {
            ensure(&totals[0] == expected, || format!("{}: total {} but hand value {expected}", case.name, totals[0]))?;
            hand_checked += 1;
        }
    }
    Ok(format!("{} golden cases agree across CLI text/json/csv and HTTP ({hand_checked} also equal hand totals); repeats byte-identical", cases.len()))
}

fn main() {
    let checks: [Criterion; 10] = [
        ("trace-sum oracle", trace_sum),
        ("Fitts checks", fitts),
        ("strategy invariants", strategies),
        ("profile invariants", profiles),
        ("mental-rule counts", mental),
        ("SUS", sus),
        ("Cronbach's alpha", alpha),
        ("normalized gain", gain),
        ("parser corpus", parser_corpus),
        ("determinism and interface parity", parity),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in checks {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", checks.len() - failed, checks.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
