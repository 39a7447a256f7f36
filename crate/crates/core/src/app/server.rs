//! Stateless JSON service over the same pipeline the CLI uses.
//!
//! Bodies are decoded by hand so malformed payloads get the same
//! `{code, message, violations}` error shape as semantic failures.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::metrics::{
    cronbach_alpha, descriptive_stats, normalized_gain, sus_band, sus_score, DescriptiveStats, GainInput, SurveyMatrix,
};
use crate::model::{
    FittsCoefficients, FormDocument, KeystrokeTimes, MentalPlacementRule, OperatorTable, StrategyKind, TaskSpec,
    TypingSkill, UserProfile, Violation,
};
use crate::parser::{LayoutConfig, LayoutOverride};

use super::compare::{compare_designs, Design};
use super::fetch::{fetch_async, FetchOptions};
use super::settings::{ModelRequest, ModelResponse, ModelSettings};
use super::{prepare_document, AppError, LayoutInputs};

/// Configuration fixed at startup; never mutated by requests.
#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    pub fetch: FetchOptions,
}

type Shared = Arc<ServerConfig>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    pub violations: Vec<Violation>,
}

struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn bad_request(code: &str, message: String) -> ApiError {
        ApiError { status: StatusCode::BAD_REQUEST, body: ErrorBody { code: code.into(), message, violations: Vec::new() } }
    }
}

impl From<AppError> for ApiError {
    fn from(e: AppError) -> ApiError {
        let (status, code) = match &e {
            AppError::Fetch(_) => (StatusCode::BAD_GATEWAY, "fetch_failed"),
            AppError::Violations(_) => (StatusCode::BAD_REQUEST, "invalid_task"),
            AppError::Design { .. } if !e.violations().is_empty() => (StatusCode::BAD_REQUEST, "invalid_task"),
            AppError::Metrics(_) => (StatusCode::BAD_REQUEST, "invalid_metrics_input"),
            _ => (StatusCode::BAD_REQUEST, "invalid_payload"),
        };
        let violations = e.violations().to_vec();
        ApiError { status, body: ErrorBody { code: code.into(), message: e.to_string(), violations } }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, json_body(&self.body)).into_response()
    }
}

fn json_body<T: Serialize>(value: &T) -> ([(header::HeaderName, &'static str); 1], Vec<u8>) {
    let bytes = serde_json::to_vec(value).expect("serializable");
    ([(header::CONTENT_TYPE, "application/json")], bytes)
}

fn ok<T: Serialize>(value: &T) -> Response {
    (StatusCode::OK, json_body(value)).into_response()
}

fn decode<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request("invalid_json", e.to_string()))
}

pub fn router(config: ServerConfig) -> Router {
    Router::new()
        .route("/api/parse", post(parse))
        .route("/api/model", post(model))
        .route("/api/compare", post(compare))
        .route("/api/profiles", get(profiles))
        .route("/api/metrics/sus", post(metrics_sus))
        .route("/api/metrics/alpha", post(metrics_alpha))
        .route("/api/metrics/gain", post(metrics_gain))
        .route("/api/metrics/describe", post(metrics_describe))
        .with_state(Arc::new(config))
}

pub async fn serve(addr: SocketAddr, config: ServerConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config)).await
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParseRequest {
    html: Option<String>,
    url: Option<String>,
    source: Option<String>,
    #[serde(default)]
    layout_config: Option<LayoutConfig>,
    #[serde(default)]
    overrides: Option<LayoutOverride>,
}

#[derive(Debug, Serialize)]
struct ParseResponse {
    document: FormDocument,
    diagnostics: Vec<String>,
}

async fn parse(State(cfg): State<Shared>, body: Bytes) -> Result<Response, ApiError> {
    let req: ParseRequest = decode(&body)?;
    let (html, source) = match (req.html, req.url) {
        (Some(h), None) => (h, req.source.unwrap_or_else(|| "inline".into())),
        (None, Some(u)) => {
            let h = fetch_async(&u, &cfg.fetch).await?;
            (h, req.source.unwrap_or(u))
        }
        _ => return Err(ApiError::bad_request("invalid_payload", "exactly one of 'html' or 'url' is required".into())),
    };
    let layout = LayoutInputs { config: req.layout_config.unwrap_or_default(), overrides: req.overrides };
    let loaded = prepare_document(&html, &source, false, &layout)?;
    Ok(ok(&ParseResponse { document: loaded.document, diagnostics: loaded.diagnostics }))
}

async fn model(body: Bytes) -> Result<Response, ApiError> {
    let req: ModelRequest = decode(&body)?;
    let result = req.settings.run(&req.document, &req.task).map_err(AppError::from)?;
    Ok(ok(&ModelResponse::new(result, true)))
}

#[derive(Debug, Deserialize)]
struct CompareRequest {
    designs: Vec<Design>,
    task: TaskSpec,
    #[serde(default)]
    settings: ModelSettings,
}

async fn compare(body: Bytes) -> Result<Response, ApiError> {
    let req: CompareRequest = decode(&body)?;
    Ok(ok(&compare_designs(&req.designs, &req.task, &req.settings)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkillInfo {
    pub name: TypingSkill,
    pub keystroke_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfilesResponse {
    pub typing_skills: Vec<SkillInfo>,
    pub default_profile: UserProfile,
    pub operator_table: OperatorTable,
    pub fitts: FittsCoefficients,
    pub strategies: Vec<StrategyKind>,
    pub mental_rules: Vec<MentalPlacementRule>,
}

pub fn profiles_response() -> ProfilesResponse {
    let k = KeystrokeTimes::default();
    ProfilesResponse {
        typing_skills: TypingSkill::ALL.iter().map(|&s| SkillInfo { name: s, keystroke_seconds: k.get(s) }).collect(),
        default_profile: UserProfile::default(),
        operator_table: OperatorTable::default(),
        fitts: FittsCoefficients::default(),
        strategies: StrategyKind::ALL.to_vec(),
        mental_rules: MentalPlacementRule::ALL.to_vec(),
    }
}

async fn profiles() -> Response {
    ok(&profiles_response())
}

#[derive(Debug, Deserialize)]
struct SusRequest {
    responses: Vec<Vec<u8>>,
}

#[derive(Debug, Serialize)]
struct SusResponse {
    scores: Vec<f64>,
    mean: f64,
    band: String,
}

async fn metrics_sus(body: Bytes) -> Result<Response, ApiError> {
    let req: SusRequest = decode(&body)?;
    let scores = req
        .responses
        .iter()
        .enumerate()
        .map(|(row, r)| sus_score(r).map_err(|e| crate::metrics::MetricsError::Respondent { row, source: Box::new(e) }))
        .collect::<Result<Vec<_>, _>>()
        .map_err(AppError::from)?;
    if scores.is_empty() {
        return Err(AppError::from(crate::metrics::MetricsError::Empty).into());
    }
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    let band = sus_band(mean).map_err(AppError::from)?;
    Ok(ok(&SusResponse { scores, mean, band }))
}

#[derive(Debug, Deserialize)]
struct AlphaRequest {
    responses: Vec<Vec<i64>>,
    scale_min: i64,
    scale_max: i64,
}

#[derive(Debug, Serialize)]
struct AlphaResponse {
    alpha: f64,
    respondents: usize,
    items: usize,
}

async fn metrics_alpha(body: Bytes) -> Result<Response, ApiError> {
    let req: AlphaRequest = decode(&body)?;
    let m = SurveyMatrix::new(req.responses, req.scale_min, req.scale_max).map_err(AppError::from)?;
    let alpha = cronbach_alpha(&m).map_err(AppError::from)?;
    Ok(ok(&AlphaResponse { alpha, respondents: m.respondents(), items: m.item_count() }))
}

#[derive(Debug, Serialize)]
struct GainResponse {
    gain_percent: f64,
}

async fn metrics_gain(body: Bytes) -> Result<Response, ApiError> {
    let req: GainInput = decode(&body)?;
    let gain_percent = normalized_gain(&req).map_err(AppError::from)?;
    Ok(ok(&GainResponse { gain_percent }))
}

#[derive(Debug, Deserialize)]
struct DescribeRequest {
    values: Vec<f64>,
    #[serde(default = "default_confidence")]
    confidence: f64,
}

fn default_confidence() -> f64 {
    0.95
}

async fn metrics_describe(body: Bytes) -> Result<Response, ApiError> {
    let req: DescribeRequest = decode(&body)?;
    let stats: DescriptiveStats = descriptive_stats(&req.values, req.confidence).map_err(AppError::from)?;
    Ok(ok(&stats))
}
