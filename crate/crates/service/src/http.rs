//! Routes.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/api/sessions` | session config | 201, session summary |
//! | GET | `/api/sessions/{id}` | | session summary |
//! | GET | `/api/sessions/{id}/question` | | `{status, question}` |
//! | POST | `/api/sessions/{id}/answer` | answer | `{status, question}` |
//! | GET | `/api/sessions/{id}/lattice` | | lattice JSON (`?format=dot` for DOT) |
//! | GET | `/api/sessions/{id}/transcript` | | CSV |
//! | GET | `/api/sessions/{id}/export` | | session snapshot |

use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use tower_http::services::ServeDir;
use triex_core::exploration::wire::{AnswerWire, SessionConfig};

use crate::error::{Result, ServiceError};
use crate::service::{QuestionState, SessionService, SessionSummary};

type Shared = State<Arc<SessionService>>;

fn body<T>(payload: std::result::Result<Json<T>, JsonRejection>) -> Result<T> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ServiceError::Validation(e.body_text()))
}

async fn create(
    State(svc): Shared,
    payload: std::result::Result<Json<SessionConfig>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionSummary>)> {
    let config = body(payload)?;
    Ok((StatusCode::CREATED, Json(svc.create(&config)?)))
}

async fn summary(State(svc): Shared, Path(id): Path<String>) -> Result<Json<SessionSummary>> {
    svc.summary(&id).map(Json)
}

async fn question(State(svc): Shared, Path(id): Path<String>) -> Result<Json<QuestionState>> {
    svc.question(&id).map(Json)
}

async fn answer(
    State(svc): Shared,
    Path(id): Path<String>,
    payload: std::result::Result<Json<AnswerWire>, JsonRejection>,
) -> Result<Json<QuestionState>> {
    // an unknown session is a 404 even when the body is malformed
    svc.store().load(&id)?;
    svc.submit(&id, &body(payload)?).map(Json)
}

#[derive(Deserialize)]
struct LatticeQuery {
    format: Option<String>,
}

async fn lattice(
    State(svc): Shared,
    Path(id): Path<String>,
    Query(q): Query<LatticeQuery>,
) -> Result<Response> {
    let lattice = svc.lattice(&id)?;
    Ok(match q.format.as_deref() {
        None | Some("json") => (
            [(header::CONTENT_TYPE, "application/json")],
            lattice.to_json(),
        )
            .into_response(),
        Some("dot") => (
            [(header::CONTENT_TYPE, "text/vnd.graphviz")],
            lattice.to_dot(),
        )
            .into_response(),
        Some(other) => {
            return Err(ServiceError::Validation(format!(
                "unknown lattice format {other:?}"
            )))
        }
    })
}

async fn transcript(State(svc): Shared, Path(id): Path<String>) -> Result<Response> {
    let csv = svc.transcript(&id)?;
    Ok(([(header::CONTENT_TYPE, "text/csv; charset=utf-8")], csv).into_response())
}

async fn export(State(svc): Shared, Path(id): Path<String>) -> Result<Response> {
    let json = svc.export(&id)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], json).into_response())
}

async fn unknown_route() -> ServiceError {
    ServiceError::NotFound("no such route".into())
}

/// The API router; with `static_dir`, other paths are served from that
/// directory (the web client bundle).
pub fn router(service: Arc<SessionService>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/sessions", post(create))
        .route("/api/sessions/{id}", get(summary))
        .route("/api/sessions/{id}/question", get(question))
        .route("/api/sessions/{id}/answer", post(answer))
        .route("/api/sessions/{id}/lattice", get(lattice))
        .route("/api/sessions/{id}/transcript", get(transcript))
        .route("/api/sessions/{id}/export", get(export))
        .route("/api/{*rest}", get(unknown_route).post(unknown_route))
        .with_state(service);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(unknown_route),
    }
}

/// Serves `router` on an already bound listener until the future is dropped.
pub async fn serve(listener: tokio::net::TcpListener, router: Router) -> std::io::Result<()> {
    axum::serve(listener, router).await
}
