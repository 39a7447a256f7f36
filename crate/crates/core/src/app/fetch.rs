//! Thin URL client. Offline mode refuses every request up front.

use std::time::Duration;

use super::AppError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FetchOptions {
    pub timeout: Duration,
    pub offline: bool,
}

impl Default for FetchOptions {
    fn default() -> Self {
        FetchOptions { timeout: Duration::from_secs(10), offline: false }
    }
}

fn check(url: &str, opts: &FetchOptions) -> Result<(), AppError> {
    if opts.offline {
        return Err(AppError::Fetch(format!("offline mode: refusing to fetch {url}")));
    }
    if !(url.starts_with("http://") || url.starts_with("https://")) {
        return Err(AppError::Fetch(format!("unsupported URL scheme: {url}")));
    }
    Ok(())
}

fn fetch_err(url: &str, e: impl std::fmt::Display) -> AppError {
    AppError::Fetch(format!("{url}: {e}"))
}

/// Blocking fetch for the CLI. Must not be called from an async context.
pub fn fetch_blocking(url: &str, opts: &FetchOptions) -> Result<String, AppError> {
    check(url, opts)?;
    let client = reqwest::blocking::Client::builder().timeout(opts.timeout).build().map_err(|e| fetch_err(url, e))?;
    let resp = client.get(url).send().map_err(|e| fetch_err(url, e))?;
    let resp = resp.error_for_status().map_err(|e| fetch_err(url, e))?;
    let bytes = resp.bytes().map_err(|e| fetch_err(url, e))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

pub async fn fetch_async(url: &str, opts: &FetchOptions) -> Result<String, AppError> {
    check(url, opts)?;
    let client = reqwest::Client::builder().timeout(opts.timeout).build().map_err(|e| fetch_err(url, e))?;
    let resp = client.get(url).send().await.map_err(|e| fetch_err(url, e))?;
    let resp = resp.error_for_status().map_err(|e| fetch_err(url, e))?;
    let bytes = resp.bytes().await.map_err(|e| fetch_err(url, e))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}
