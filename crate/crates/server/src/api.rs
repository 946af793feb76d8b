//! JSON-over-HTTP service.
//!
//! Compute endpoints are pure and run on the blocking pool; problem
//! persistence goes through [`ProblemStore`]. Every non-2xx response body is
//! one [`ApiError`].

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ndagg::mcgdm::DecisionProblem;
use ndagg::ndim_agg::NDimAggregationSpec;
use ndagg::sampling::{DEFAULT_SAMPLES, DEFAULT_SEED};
use ndagg::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use crate::compute::{self, to_value, Failure, Outcome};
use crate::store::ProblemStore;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_ORIGINS: &[&str] = &["http://localhost:5173", "http://127.0.0.1:5173"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    /// `VALIDATION`, `NOT_FOUND` or `INTERNAL`.
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

fn error_response(status: StatusCode, code: &str, message: String, detail: Option<Value>) -> Response {
    let body = ApiError {
        code: code.into(),
        message,
        detail,
    };
    (status, Json(body)).into_response()
}

impl IntoResponse for Failure {
    fn into_response(self) -> Response {
        let message = self.to_string();
        match self {
            Failure::Core(Error::Validation { path, .. }) => {
                error_response(StatusCode::BAD_REQUEST, "VALIDATION", message, Some(json!({"path": path})))
            }
            Failure::Core(Error::IncompatibleOrder(report) | Error::DominanceViolation(report)) => error_response(
                StatusCode::UNPROCESSABLE_ENTITY,
                "VALIDATION",
                message,
                Some(json!({"axiom": report.axiom, "report": report})),
            ),
            Failure::Core(_) => error_response(StatusCode::BAD_REQUEST, "VALIDATION", message, None),
            Failure::NotFound(_) => error_response(StatusCode::NOT_FOUND, "NOT_FOUND", message, None),
            Failure::Io(_) => error_response(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", message, None),
        }
    }
}

/// Where to keep problems and which browser origins may call the service.
#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub data_dir: PathBuf,
    /// `["*"]` allows any origin.
    pub allowed_origins: Vec<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            data_dir: PathBuf::from("ndagg-data"),
            allowed_origins: DEFAULT_ORIGINS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone)]
struct AppState {
    store: ProblemStore,
}

fn cors(origins: &[String]) -> CorsLayer {
    let layer = CorsLayer::new()
        .allow_methods([Method::GET, Method::POST, Method::PUT, Method::DELETE, Method::OPTIONS])
        .allow_headers(Any);
    if origins.iter().any(|o| o == "*") {
        layer.allow_origin(Any)
    } else {
        let list: Vec<HeaderValue> = origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()).collect();
        layer.allow_origin(AllowOrigin::list(list))
    }
}

pub fn router(config: ServiceConfig) -> Router {
    let state = AppState {
        store: ProblemStore::new(config.data_dir),
    };
    Router::new()
        .route("/healthz", get(|| async { "ok" }))
        .route("/api/v1/collective", post(collective))
        .route("/api/v1/rank", post(rank))
        .route("/api/v1/score", post(score))
        .route("/api/v1/validate", post(validate))
        .route("/api/v1/sensitivity", post(sensitivity))
        .route("/api/v1/check-order", post(check_order))
        .route("/api/v1/classify", post(classify))
        .route("/api/v1/catalog", get(|| async { Json(compute::catalog()) }))
        .route("/api/v1/problems/{id}", get(get_problem).put(put_problem).delete(delete_problem))
        .layer(cors(&config.allowed_origins))
        .with_state(state)
}

/// Binds `127.0.0.1:port` and serves until the process is interrupted.
pub async fn serve(port: u16, config: ServiceConfig) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("ndagg listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

fn parse_body(body: &[u8]) -> Outcome<Value> {
    serde_json::from_slice(body).map_err(|e| Failure::Core(Error::validation("$", format!("malformed JSON: {e}"))))
}

fn field<T: for<'de> Deserialize<'de>>(body: &Value, key: &str) -> Outcome<Option<T>> {
    match body.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v.clone())
            .map(Some)
            .map_err(|e| Failure::Core(Error::validation(key, e.to_string()))),
    }
}

/// Runs a pure computation on the blocking pool.
async fn offload<F>(body: Bytes, f: F) -> Response
where
    F: FnOnce(Value) -> Outcome<Value> + Send + 'static,
{
    let result = tokio::task::spawn_blocking(move || parse_body(&body).and_then(f)).await;
    match result {
        Ok(Ok(v)) => Json(v).into_response(),
        Ok(Err(failure)) => failure.into_response(),
        Err(e) => error_response(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string(), None),
    }
}

async fn collective(body: Bytes) -> Response {
    offload(body, |v| Ok(to_value(&compute::collective(&compute::parse_problem(v)?)?))).await
}

async fn rank(body: Bytes) -> Response {
    offload(body, |v| Ok(to_value(&compute::rank(&compute::parse_problem(v)?)?))).await
}

async fn score(body: Bytes) -> Response {
    offload(body, |v| compute::score(&compute::parse_problem(v)?)).await
}

async fn validate(body: Bytes) -> Response {
    offload(body, |v| compute::validate(&compute::parse_problem(v)?)).await
}

async fn sensitivity(body: Bytes) -> Response {
    offload(body, |v| {
        let problem = v.get("problem").cloned().ok_or_else(|| Failure::Core(Error::validation("problem", "missing")))?;
        let problem = compute::parse_problem(problem)?;
        let edits: Vec<Value> = field(&v, "edits")?.unwrap_or_default();
        let edits = compute::parse_edits(&edits)?;
        Ok(to_value(&compute::sensitivity(&problem, &edits)?))
    })
    .await
}

async fn check_order(body: Bytes) -> Response {
    offload(body, |v| {
        let order = v.get("order").cloned().ok_or_else(|| Failure::Core(Error::validation("order", "missing")))?;
        let order = compute::parse_order(order)?;
        let seed = field(&v, "seed")?.unwrap_or(DEFAULT_SEED);
        let samples = field(&v, "samples")?.unwrap_or(DEFAULT_SAMPLES);
        Ok(to_value(&compute::check_order(&order, seed, samples)?))
    })
    .await
}

async fn classify(body: Bytes) -> Response {
    offload(body, |v| {
        let spec: NDimAggregationSpec =
            field(&v, "aggregator")?.ok_or_else(|| Failure::Core(Error::validation("aggregator", "missing")))?;
        let order = v.get("order").cloned().ok_or_else(|| Failure::Core(Error::validation("order", "missing")))?;
        let order = compute::parse_order(order)?;
        let arity = field(&v, "arity")?;
        let seed = field(&v, "seed")?.unwrap_or(DEFAULT_SEED);
        let samples = field(&v, "samples")?.unwrap_or(DEFAULT_SAMPLES);
        Ok(to_value(&compute::classify(&spec, &order, arity, seed, samples)?))
    })
    .await
}

async fn get_problem(State(state): State<AppState>, Path(id): Path<String>) -> Response {
    match state.store.get(&id).await {
        Ok(p) => Json(p).into_response(),
        Err(f) => f.into_response(),
    }
}

async fn put_problem(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Response {
    let problem = match parse_body(&body)
        .and_then(compute::parse_problem)
        .and_then(|p: DecisionProblem| p.validate_cube(1).map(|_| p).map_err(Failure::from))
    {
        Ok(p) => p,
        Err(f) => return f.into_response(),
    };
    match state.store.put(&id, &problem).await {
        Ok(()) => Json(problem).into_response(),
        Err(f) => f.into_response(),
    }
}

async fn delete_problem(State(state): State<AppState>, Path(id): Path<String>) -> Response {
    match state.store.delete(&id).await {
        Ok(()) => StatusCode::NO_CONTENT.into_response(),
        Err(f) => f.into_response(),
    }
}
