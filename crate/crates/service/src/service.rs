//! The session model behind the HTTP routes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use triex_core::exploration::wire::{AnswerWire, QuestionView, SessionConfig};
use triex_core::exploration::{transcript_csv, Mode, Rejection, Variant};
use triex_core::{kc_lattice, label_nodes, ExplorationSession, LabeledImplicationLattice, Status};

use crate::error::{Result, ServiceError};
use crate::store::{new_id, FileStore, SessionRecord};

/// The pending question, or `question: null` once the session is finished.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionState {
    pub status: Status,
    pub question: Option<QuestionView>,
}

impl QuestionState {
    fn of(session: &ExplorationSession) -> Self {
        QuestionState {
            status: session.status(),
            question: QuestionView::of(session),
        }
    }
}

/// What `GET /api/sessions/{id}` returns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionSummary {
    pub id: String,
    pub created: String,
    pub updated: String,
    pub status: Status,
    pub mode: Mode,
    pub variant: Variant,
    pub attributes: Vec<String>,
    pub conditions: Vec<String>,
    /// Answers accepted so far.
    pub answered: u64,
    pub node: usize,
    pub schedule_len: usize,
    pub implications: usize,
    pub question: Option<QuestionView>,
}

impl SessionSummary {
    fn new(record: &SessionRecord, session: &ExplorationSession) -> Self {
        let u = session.universe();
        SessionSummary {
            id: record.id.clone(),
            created: record.created.to_rfc3339(),
            updated: record.updated.to_rfc3339(),
            status: session.status(),
            mode: session.mode(),
            variant: session.variant(),
            attributes: u.attributes.clone(),
            conditions: u.conditions.clone(),
            answered: session.seq(),
            node: session.node_index(),
            schedule_len: session.schedule().len(),
            implications: session.current_kc().len(),
            question: QuestionView::of(session),
        }
    }
}

/// File-backed sessions. Operations on one session are serialized; distinct
/// sessions do not contend.
#[derive(Debug)]
pub struct SessionService {
    store: FileStore,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl SessionService {
    pub fn new(store: FileStore) -> Self {
        SessionService {
            store,
            locks: Mutex::new(HashMap::new()),
        }
    }

    pub fn store(&self) -> &FileStore {
        &self.store
    }

    fn lock(&self, id: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        locks.entry(id.to_owned()).or_default().clone()
    }

    fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&SessionRecord, &ExplorationSession) -> T,
    ) -> Result<T> {
        let lock = self.lock(id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let record = self.store.load(id)?;
        let session = record.session()?;
        Ok(f(&record, &session))
    }

    pub fn create(&self, config: &SessionConfig) -> Result<SessionSummary> {
        let session = config
            .build()
            .map_err(|e| ServiceError::Validation(e.to_string()))?;
        let mut id = new_id();
        while self.store.exists(&id) {
            id = new_id();
        }
        let record = SessionRecord::new(id, &session);
        self.store.save(&record)?;
        log::info!(
            "created session {} ({} conditions)",
            record.id,
            session.universe().conditions.len()
        );
        Ok(SessionSummary::new(&record, &session))
    }

    pub fn summary(&self, id: &str) -> Result<SessionSummary> {
        self.with_session(id, SessionSummary::new)
    }

    pub fn question(&self, id: &str) -> Result<QuestionState> {
        self.with_session(id, |_, s| QuestionState::of(s))
    }

    /// Validates and applies an answer, persisting the new state before
    /// returning. A refused answer leaves the stored session unchanged,
    /// except that an inconsistency is recorded in its status.
    pub fn submit(&self, id: &str, answer: &AnswerWire) -> Result<QuestionState> {
        let lock = self.lock(id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let mut record = self.store.load(id)?;
        let mut session = record.session()?;
        if session.pending().is_none() {
            return Err(ServiceError::NoPendingQuestion);
        }
        if let Some(got) = answer.seq {
            if got != session.seq() {
                return Err(ServiceError::Rejected(Rejection::StaleQuestion {
                    expected: session.seq(),
                    got,
                }));
            }
        }
        let resolved = answer
            .resolve(session.universe(), session.mode())
            .map_err(ServiceError::Rejected)?;
        match session.submit(resolved) {
            Ok(()) => {}
            Err(triex_core::Error::Inconsistent(r)) => {
                record.update(&session);
                self.store.save(&record)?;
                return Err(ServiceError::Inconsistent(r));
            }
            Err(e) => return Err(e.into()),
        }
        record.update(&session);
        self.store.save(&record)?;
        Ok(QuestionState::of(&session))
    }

    /// Lattice of the conditional implications known so far.
    pub fn lattice(&self, id: &str) -> Result<LabeledImplicationLattice> {
        self.with_session(id, |_, s| {
            let kc = s.current_kc();
            label_nodes(&kc, &kc_lattice(&kc))
        })
    }

    pub fn transcript(&self, id: &str) -> Result<String> {
        self.with_session(id, |_, s| transcript_csv(s.universe(), s.transcript()))
    }

    /// The session snapshot, loadable with [`ExplorationSession::from_json`].
    pub fn export(&self, id: &str) -> Result<String> {
        self.with_session(id, |_, s| s.to_json())
    }
}
