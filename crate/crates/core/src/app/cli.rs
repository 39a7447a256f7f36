//! Command-line front end. `run` returns the report text so tests can drive
//! it without spawning a process.

use std::collections::BTreeMap;
use std::fs::File;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::metrics::{
    cronbach_alpha, descriptive_stats, normalized_gain, sus_band, sus_score, GainInput, MetricsError, SurveyMatrix,
};
use crate::model::{
    FittsCoefficients, MentalPlacementRule, OperatorTable, Strategy, StrategyKind, TypingSkill, UserProfile,
};
use crate::parser::{LayoutConfig, LayoutOverride};

use super::compare::{compare_designs, Design};
use super::fetch::{fetch_blocking, FetchOptions};
use super::render::{render_comparison, render_model, to_json, OutputFormat};
use super::server::{profiles_response, serve, ServerConfig};
use super::settings::{ModelResponse, ModelSettings};
use super::{load_document, load_task, prepare_document, read_json, AppError, LayoutInputs, LoadedDocument};

#[derive(Debug, Parser)]
#[command(name = "klmfa", version, about = "Predict form-filling time with the Keystroke-Level Model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Model a task on a form and report the predicted time.
    Analyze(AnalyzeArgs),
    /// Parse a form and print the laid-out document as JSON.
    Parse(ParseArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
    /// List typing skills and default operator times.
    Profiles,
    /// Questionnaire and learning-outcome measures.
    #[command(subcommand)]
    Metrics(MetricsCommand),
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Local HTML file, or a form document as .json.
    #[arg(long, conflicts_with = "url")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub url: Option<String>,
    /// JSON layout configuration.
    #[arg(long)]
    pub layout: Option<PathBuf>,
    /// JSON map of element id to geometry.
    #[arg(long)]
    pub overrides: Option<PathBuf>,
    /// Fetch timeout in seconds.
    #[arg(long, default_value_t = 10.0)]
    pub timeout: f64,
    /// Never touch the network.
    #[arg(long)]
    pub offline: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long)]
    pub task: PathBuf,
    #[arg(long, default_value = "skilled")]
    pub profile: TypingSkill,
    #[arg(long, default_value_t = 1.0)]
    pub motor_mult: f64,
    #[arg(long, default_value_t = 1.0)]
    pub cognitive_mult: f64,
    #[arg(long, default_value = "mouse-keyboard")]
    pub strategy: StrategyKind,
    /// Apply Fitts' law to pointing.
    #[arg(long)]
    pub fitts: bool,
    #[arg(long, requires = "fitts")]
    pub fitts_a: Option<f64>,
    #[arg(long, requires = "fitts")]
    pub fitts_b: Option<f64>,
    #[arg(long, default_value = "per-element")]
    pub mental: MentalPlacementRule,
    /// JSON operator table replacing the defaults.
    #[arg(long)]
    pub operators: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    pub format: OutputFormat,
    #[arg(long)]
    pub explain: bool,
    /// Additional design to compare, as LABEL=PATH. Repeatable.
    #[arg(long, value_name = "LABEL=PATH")]
    pub compare: Vec<String>,
    /// Geometry overrides for one compared design, as LABEL=PATH.
    #[arg(long, value_name = "LABEL=PATH")]
    pub compare_overrides: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[command(flatten)]
    pub source: SourceArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub addr: SocketAddr,
    #[arg(long, default_value_t = 10.0)]
    pub timeout: f64,
    #[arg(long)]
    pub offline: bool,
}

#[derive(Debug, Subcommand)]
pub enum MetricsCommand {
    /// SUS scores from a CSV with a header and 10 responses per row.
    Sus { file: PathBuf },
    /// Cronbach's alpha from a CSV with a header and one row per respondent.
    Alpha {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        min: i64,
        #[arg(long, default_value_t = 5)]
        max: i64,
    },
    /// Normalized learning gain in percent.
    Gain {
        #[arg(long)]
        pre: f64,
        #[arg(long)]
        post: f64,
        #[arg(long, default_value_t = 100.0)]
        max: f64,
    },
    /// Mean, median, SD and t confidence interval of numbers in a file.
    Describe {
        file: PathBuf,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
    },
}

/// What the binary should do after argument handling.
pub enum Outcome {
    Print(String),
    Serve(SocketAddr, ServerConfig),
}

pub fn run(cli: Cli) -> Result<Outcome, AppError> {
    match cli.command {
        Command::Analyze(a) => analyze(&a).map(Outcome::Print),
        Command::Parse(p) => {
            let loaded = load_source(&p.source, p.source.overrides.as_deref())?;
            let body = serde_json::json!({ "document": loaded.document, "diagnostics": loaded.diagnostics });
            Ok(Outcome::Print(to_json(&body)))
        }
        Command::Serve(s) => {
            let fetch = FetchOptions { timeout: timeout(s.timeout)?, offline: s.offline };
            Ok(Outcome::Serve(s.addr, ServerConfig { fetch }))
        }
        Command::Profiles => Ok(Outcome::Print(to_json(&profiles_response()))),
        Command::Metrics(m) => metrics(m).map(Outcome::Print),
    }
}

/// Runs the binary's logic and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { super::exit::USAGE } else { 0 };
        }
    };
    match run(cli) {
        Ok(Outcome::Print(s)) => {
            print!("{s}");
            0
        }
        Ok(Outcome::Serve(addr, config)) => {
            let rt = match tokio::runtime::Runtime::new() {
                Ok(rt) => rt,
                Err(e) => {
                    eprintln!("error: cannot start runtime: {e}");
                    return super::exit::CONFIG;
                }
            };
            match rt.block_on(serve(addr, config)) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    super::exit::CONFIG
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            for v in e.violations() {
                eprintln!("  {v}");
            }
            e.exit_code()
        }
    }
}

fn timeout(secs: f64) -> Result<Duration, AppError> {
    Duration::try_from_secs_f64(secs).map_err(|_| AppError::Config(format!("invalid timeout {secs}")))
}

fn layout_inputs(src: &SourceArgs, overrides: Option<&Path>) -> Result<LayoutInputs, AppError> {
    let config: LayoutConfig = match &src.layout {
        Some(p) => read_json(p)?,
        None => LayoutConfig::default(),
    };
    let overrides: Option<LayoutOverride> = overrides.map(read_json).transpose()?;
    Ok(LayoutInputs { config, overrides })
}

fn load_source(src: &SourceArgs, overrides: Option<&Path>) -> Result<LoadedDocument, AppError> {
    let layout = layout_inputs(src, overrides)?;
    match (&src.input, &src.url) {
        (Some(p), _) => load_document(p, &layout),
        (None, Some(u)) => {
            let opts = FetchOptions { timeout: timeout(src.timeout)?, offline: src.offline };
            let html = fetch_blocking(u, &opts)?;
            prepare_document(&html, u, false, &layout)
        }
        (None, None) => Err(AppError::Config("one of --input or --url is required".into())),
    }
}

fn settings(a: &AnalyzeArgs) -> Result<ModelSettings, AppError> {
    let fitts = if a.fitts {
        let d = FittsCoefficients::default();
        let c = FittsCoefficients::new(a.fitts_a.unwrap_or(d.a), a.fitts_b.unwrap_or(d.b))
            .map_err(|e| AppError::Config(e.to_string()))?;
        Some(c)
    } else {
        None
    };
    let operator_table: OperatorTable = match &a.operators {
        Some(p) => read_json(p)?,
        None => OperatorTable::default(),
    };
    let profile = UserProfile { typing_skill: a.profile, motor_multiplier: a.motor_mult, cognitive_multiplier: a.cognitive_mult };
    profile.validate().map_err(|e| AppError::Config(e.to_string()))?;
    operator_table.to_micros().map_err(|e| AppError::Config(e.to_string()))?;
    Ok(ModelSettings { profile, strategy: Strategy::new(a.strategy), operator_table, fitts, mental_rule: a.mental })
}

fn split_pair(s: &str, flag: &str) -> Result<(String, PathBuf), AppError> {
    match s.split_once('=') {
        Some((l, p)) if !l.is_empty() && !p.is_empty() => Ok((l.to_string(), PathBuf::from(p))),
        _ => Err(AppError::Config(format!("{flag} expects LABEL=PATH, got '{s}'"))),
    }
}

fn analyze(a: &AnalyzeArgs) -> Result<String, AppError> {
    let settings = settings(a)?;
    if a.compare.is_empty() {
        if !a.compare_overrides.is_empty() {
            return Err(AppError::Config("--compare-overrides needs --compare".into()));
        }
        let loaded = load_source(&a.source, a.source.overrides.as_deref())?;
        let task = load_task(&a.task)?;
        let result = settings.run(&loaded.document, &task)?;
        return Ok(render_model(&ModelResponse::new(result, a.explain), a.format));
    }

    // The primary input, when given, is the first design and is labeled "input".
    let mut overrides: BTreeMap<String, PathBuf> = BTreeMap::new();
    for s in &a.compare_overrides {
        let (l, p) = split_pair(s, "--compare-overrides")?;
        overrides.insert(l, p);
    }
    let mut designs = Vec::new();
    if a.source.input.is_some() || a.source.url.is_some() {
        let loaded = load_source(&a.source, a.source.overrides.as_deref())?;
        designs.push(Design { label: "input".into(), document: loaded.document });
    }
    for s in &a.compare {
        let (label, path) = split_pair(s, "--compare")?;
        let layout = layout_inputs(&a.source, overrides.get(&label).map(PathBuf::as_path))?;
        let loaded = load_document(&path, &layout)?;
        designs.push(Design { label, document: loaded.document });
    }
    if let Some(l) = overrides.keys().find(|l| !designs.iter().any(|d| &d.label == *l)) {
        return Err(AppError::Config(format!("--compare-overrides names unknown design '{l}'")));
    }
    let task = load_task(&a.task)?;
    let report = compare_designs(&designs, &task, &settings)?;
    Ok(render_comparison(&report, a.format))
}

fn open(path: &Path) -> Result<File, AppError> {
    File::open(path).map_err(|e| AppError::Input { path: path.display().to_string(), msg: e.to_string() })
}

fn metrics(m: MetricsCommand) -> Result<String, AppError> {
    match m {
        MetricsCommand::Sus { file } => {
            let matrix = SurveyMatrix::from_csv(open(&file)?, 1, 5)?;
            let scores = matrix
                .responses
                .iter()
                .enumerate()
                .map(|(row, r)| {
                    let r: Vec<u8> = r.iter().map(|&v| v as u8).collect();
                    sus_score(&r).map_err(|e| MetricsError::Respondent { row, source: Box::new(e) })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if scores.is_empty() {
                return Err(MetricsError::Empty.into());
            }
            let mean = scores.iter().sum::<f64>() / scores.len() as f64;
            let body = serde_json::json!({ "scores": scores, "mean": mean, "band": sus_band(mean)? });
            Ok(to_json(&body))
        }
        MetricsCommand::Alpha { file, min, max } => {
            let matrix = SurveyMatrix::from_csv(open(&file)?, min, max)?;
            let alpha = cronbach_alpha(&matrix)?;
            let body = serde_json::json!({ "alpha": alpha, "respondents": matrix.respondents(), "items": matrix.item_count() });
            Ok(to_json(&body))
        }
        MetricsCommand::Gain { pre, post, max } => {
            let g = normalized_gain(&GainInput { pre, post, max })?;
            Ok(to_json(&serde_json::json!({ "gain_percent": g })))
        }
        MetricsCommand::Describe { file, confidence } => {
            let text = super::read_text(&file)?;
            let values = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>().map_err(|_| AppError::Input { path: file.display().to_string(), msg: format!("'{s}' is not a number") }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(to_json(&descriptive_stats(&values, confidence)?))
        }
    }
}
