//! HTTP front end over a [`FileStore`].
//!
//! Scheme maintenance routes (`PUT /schemes/...`) are the administrative
//! surface; ranking routes (`POST /rank`, `POST /whatif`) are read-only.
//! There is no authentication: separate the two groups at the proxy if
//! roles matter in a deployment.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::Router;
use fmadm_core::evaluate::{evaluate_all, MethodSelection, Overrides};
use fmadm_core::io::render_documents;
use fmadm_core::store::FileStore;
use fmadm_core::Error;
use serde::Deserialize;
use serde_json::json;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankRequest {
    pub scheme: String,
    pub dataset: String,
    pub method: MethodSelection,
}

/// Ranking with per-criterion weight or orientation overrides. Nothing is
/// persisted.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhatIfRequest {
    pub scheme: String,
    pub dataset: String,
    pub method: MethodSelection,
    #[serde(default)]
    pub overrides: Overrides,
}

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        ApiError(err)
    }
}

pub fn status_for(err: &Error) -> StatusCode {
    match err {
        Error::NotFound { .. } => StatusCode::NOT_FOUND,
        Error::InvalidName(_)
        | Error::Parse { .. }
        | Error::SchemaViolation { .. }
        | Error::UnknownScaleReference { .. } => StatusCode::BAD_REQUEST,
        Error::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        _ => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = status_for(&self.0);
        if status.is_server_error() {
            tracing::error!(error = %self.0, "request failed");
        }
        let body = match &self.0 {
            Error::InvalidDataset(issues) => json!({ "error": self.0.to_string(), "issues": issues }),
            other => json!({ "error": other.to_string() }),
        };
        (status, axum::Json(body)).into_response()
    }
}

fn bad_request(message: impl std::fmt::Display) -> Response {
    (
        StatusCode::BAD_REQUEST,
        axum::Json(json!({ "error": message.to_string() })),
    )
        .into_response()
}

fn json_text(body: String) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], body).into_response()
}

type Store = Arc<FileStore>;

/// Runs blocking store work off the async executor.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, Error> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .expect("store task panicked")
        .map_err(ApiError)
}

#[allow(clippy::result_large_err)]
fn parse_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T, Response> {
    serde_json::from_slice(body).map_err(bad_request)
}

#[allow(clippy::result_large_err)]
fn utf8(body: Bytes) -> Result<String, Response> {
    String::from_utf8(body.to_vec()).map_err(|_| bad_request("body is not valid UTF-8"))
}

async fn healthz() -> &'static str {
    "ok"
}

async fn list_schemes(State(store): State<Store>) -> Result<Response, ApiError> {
    let names = blocking(move || store.list_schemes()).await?;
    Ok(axum::Json(names).into_response())
}

async fn get_scheme(State(store): State<Store>, Path(name): Path<String>) -> Result<Response, ApiError> {
    let text = blocking(move || store.scheme_text(&name)).await?;
    Ok(json_text(text))
}

async fn put_scheme(State(store): State<Store>, Path(name): Path<String>, body: Bytes) -> Response {
    let text = match utf8(body) {
        Ok(text) => text,
        Err(resp) => return resp,
    };
    match blocking(move || store.put_scheme(&name, &text)).await {
        Ok(scheme) => json_text(fmadm_core::io::scheme_to_json(&scheme)),
        Err(err) => err.into_response(),
    }
}

async fn list_datasets(State(store): State<Store>, Path(name): Path<String>) -> Result<Response, ApiError> {
    let names = blocking(move || store.list_datasets(&name)).await?;
    Ok(axum::Json(names).into_response())
}

async fn put_dataset(
    State(store): State<Store>,
    Path((scheme, dataset)): Path<(String, String)>,
    body: Bytes,
) -> Response {
    let text = match utf8(body) {
        Ok(text) => text,
        Err(resp) => return resp,
    };
    let (s, d) = (scheme.clone(), dataset.clone());
    match blocking(move || store.put_dataset(&s, &d, &text)).await {
        Ok(alts) => axum::Json(json!({
            "scheme": scheme,
            "dataset": dataset,
            "alternatives": alts.len(),
        }))
        .into_response(),
        Err(err) => err.into_response(),
    }
}

async fn rank_with(
    store: Store,
    scheme: String,
    dataset: String,
    method: MethodSelection,
    overrides: Overrides,
) -> Response {
    let result = blocking(move || {
        let (scheme, alts) = store.load(&scheme, &dataset)?;
        evaluate_all(&scheme, &alts, method, &overrides)
    })
    .await;
    match result {
        Ok(docs) => json_text(render_documents(&docs)),
        Err(err) => err.into_response(),
    }
}

async fn rank(State(store): State<Store>, body: Bytes) -> Response {
    match parse_body::<RankRequest>(&body) {
        Ok(req) => rank_with(store, req.scheme, req.dataset, req.method, Overrides::new()).await,
        Err(resp) => resp,
    }
}

async fn whatif(State(store): State<Store>, body: Bytes) -> Response {
    match parse_body::<WhatIfRequest>(&body) {
        Ok(req) => rank_with(store, req.scheme, req.dataset, req.method, req.overrides).await,
        Err(resp) => resp,
    }
}

pub fn router(store: FileStore) -> Router {
    let store: Store = Arc::new(store);
    Router::new()
        .route("/healthz", get(healthz))
        .route("/schemes", get(list_schemes))
        .route("/schemes/{name}", get(get_scheme).put(put_scheme))
        .route("/schemes/{name}/datasets", get(list_datasets))
        .route("/schemes/{name}/datasets/{dataset}", put(put_dataset))
        .route("/rank", post(rank))
        .route("/whatif", post(whatif))
        .layer(tower_http::cors::CorsLayer::permissive())
        .with_state(store)
}

pub async fn serve(addr: SocketAddr, store: FileStore) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, root = %store.root().display(), "listening");
    axum::serve(listener, router(store)).await
}
