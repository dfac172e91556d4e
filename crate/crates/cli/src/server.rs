//! Local JSON service over one shared [`SessionState`].
//!
//! State-changing requests hold the write lock for their whole duration.
//! Reads clone a snapshot and release the lock before computing.

use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use hlcluster::seeds::{census, exchange_graph, DEFAULT_BUDGET};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::session::{Descriptor, SessionError, SessionExport, SessionState, VertexRef};

pub type Shared = Arc<RwLock<SessionState>>;

#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: message.into(),
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::Frozen { .. } | SessionError::NotDynkin | SessionError::EmptyHistory => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            SessionError::Seed(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError {
            status,
            message: e.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> ApiResult {
    serde_json::to_value(v)
        .map(Json)
        .map_err(|e| ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            message: e.to_string(),
        })
}

fn snapshot(state: &Shared) -> SessionState {
    state.read().expect("session lock poisoned").clone()
}

async fn get_seed(State(state): State<Shared>) -> ApiResult {
    to_json(&snapshot(&state))
}

async fn reset(State(state): State<Shared>, body: Bytes) -> ApiResult {
    let desc: Descriptor = parse_body(&body)?;
    let fresh = SessionState::new(desc)?;
    let mut guard = state.write().expect("session lock poisoned");
    *guard = fresh;
    to_json(&*guard)
}

#[derive(Deserialize)]
struct MutateRequest {
    vertex: VertexRef,
}

async fn mutate(State(state): State<Shared>, body: Bytes) -> ApiResult {
    let req: MutateRequest = parse_body(&body)?;
    let mut guard = state.write().expect("session lock poisoned");
    let outcome = guard.mutate(&req.vertex)?;
    let mut v = to_json(&*guard)?.0;
    v["step"] = to_json(&outcome)?.0;
    Ok(Json(v))
}

async fn undo(State(state): State<Shared>) -> ApiResult {
    let mut guard = state.write().expect("session lock poisoned");
    guard.undo()?;
    to_json(&*guard)
}

#[derive(Deserialize)]
struct CensusQuery {
    budget: Option<usize>,
}

fn census_json(session: &SessionState, budget: usize) -> ApiResult {
    let g = exchange_graph(session.current(), budget).map_err(SessionError::from)?;
    let mut v = json!({ "status": g.status, "explored": g.len() });
    if g.is_complete() {
        let c = census(&g).map_err(SessionError::from)?;
        let text: Vec<String> = c.variables.iter().map(ToString::to_string).collect();
        for (key, value) in to_json(&c)?.0.as_object().into_iter().flatten() {
            v[key] = value.clone();
        }
        v["variable_text"] = json!(text);
    }
    Ok(Json(v))
}

async fn get_census(State(state): State<Shared>, Query(q): Query<CensusQuery>) -> ApiResult {
    let session = snapshot(&state);
    let budget = q.budget.unwrap_or(DEFAULT_BUDGET);
    tokio::task::spawn_blocking(move || census_json(&session, budget))
        .await
        .map_err(|e| ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            message: e.to_string(),
        })?
}

async fn get_report(State(state): State<Shared>) -> ApiResult {
    let session = snapshot(&state);
    to_json(&session.initial().report()?)
}

async fn export_session(State(state): State<Shared>) -> ApiResult {
    to_json(&snapshot(&state).export())
}

async fn import_session(State(state): State<Shared>, body: Bytes) -> ApiResult {
    let e: SessionExport = parse_body(&body)?;
    let fresh = SessionState::import(e)?;
    let mut guard = state.write().expect("session lock poisoned");
    *guard = fresh;
    to_json(&*guard)
}

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/api/seed", get(get_seed))
        .route("/api/reset", post(reset))
        .route("/api/mutate", post(mutate))
        .route("/api/undo", post(undo))
        .route("/api/census", get(get_census))
        .route("/api/report", get(get_report))
        .route("/api/session", get(export_session).post(import_session))
        .with_state(state)
}

pub fn shared(session: SessionState) -> Shared {
    Arc::new(RwLock::new(session))
}

/// Serves the API on `127.0.0.1:port` until the process is stopped.
pub async fn serve(port: u16) -> std::io::Result<()> {
    let app = router(shared(SessionState::default_session()));
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app).await
}
