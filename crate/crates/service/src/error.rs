use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;
use triex_core::exploration::Rejection;

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("no session {0:?}")]
    NotFound(String),
    /// The session configuration or a request body is malformed.
    #[error("{0}")]
    Validation(String),
    /// The answer was refused; the question stays pending.
    #[error("{0}")]
    Rejected(Rejection),
    /// The answer contradicts earlier ones; the session is marked inconsistent.
    #[error("{0}")]
    Inconsistent(Rejection),
    #[error("the session has no pending question")]
    NoPendingQuestion,
    #[error("storage: {0}")]
    Storage(#[from] std::io::Error),
    #[error("stored session {id:?} is unreadable: {message}")]
    Corrupt { id: String, message: String },
}

pub type Result<T, E = ServiceError> = std::result::Result<T, E>;

impl ServiceError {
    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::Validation(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Rejected(_)
            | ServiceError::Inconsistent(_)
            | ServiceError::NoPendingQuestion => StatusCode::CONFLICT,
            ServiceError::Storage(_) | ServiceError::Corrupt { .. } => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        }
    }

    /// The `error` field of the response body.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::NotFound(_) => "not-found",
            ServiceError::Validation(_) => "validation",
            ServiceError::Rejected(r) => r.code(),
            ServiceError::Inconsistent(_) => "inconsistent",
            ServiceError::NoPendingQuestion => "no-pending-question",
            ServiceError::Storage(_) => "storage",
            ServiceError::Corrupt { .. } => "corrupt-session",
        }
    }
}

impl From<triex_core::Error> for ServiceError {
    fn from(e: triex_core::Error) -> Self {
        use triex_core::Error as E;
        match e {
            E::Rejected(r) => ServiceError::Rejected(r),
            E::Inconsistent(r) => ServiceError::Inconsistent(r),
            E::NoPendingQuestion => ServiceError::NoPendingQuestion,
            other => ServiceError::Validation(other.to_string()),
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = self.status();
        if status.is_server_error() {
            log::error!("{self}");
        }
        let body = json!({ "error": self.code(), "reason": self.to_string() });
        (status, Json(body)).into_response()
    }
}
