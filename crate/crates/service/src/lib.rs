//! Exploration sessions over HTTP with JSON bodies.
//!
//! Sessions live in a data directory, one JSON file each, rewritten
//! atomically after every accepted answer; a restarted service picks up
//! exactly where the last completed request left off. Errors are
//! `{"error": code, "reason": text}` with status 404 (unknown session), 422
//! (malformed configuration or body) or 409 (answer refused, inconsistent,
//! stale, or nothing pending).

mod error;
pub mod http;
mod service;
mod store;

pub use error::{Result, ServiceError};
pub use http::{router, serve};
pub use service::{QuestionState, SessionService, SessionSummary};
pub use store::{is_valid_id, FileStore, SessionRecord};
