//! One JSON file per session.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use triex_core::{ExplorationSession, Status};

use crate::error::{Result, ServiceError};

/// A stored session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub created: DateTime<Utc>,
    pub updated: DateTime<Utc>,
    pub status: Status,
    /// The session snapshot, as produced by [`ExplorationSession::to_json`].
    pub snapshot: serde_json::Value,
}

impl SessionRecord {
    pub fn new(id: String, session: &ExplorationSession) -> Self {
        let now = Utc::now();
        SessionRecord {
            id,
            created: now,
            updated: now,
            status: session.status(),
            snapshot: snapshot_value(session),
        }
    }

    pub fn session(&self) -> Result<ExplorationSession> {
        let session = ExplorationSession::from_json(&self.snapshot.to_string()).map_err(|e| {
            ServiceError::Corrupt {
                id: self.id.clone(),
                message: e.to_string(),
            }
        })?;
        if session.status() != self.status {
            return Err(ServiceError::Corrupt {
                id: self.id.clone(),
                message: format!("status {:?} does not match the snapshot", self.status),
            });
        }
        Ok(session)
    }

    pub fn update(&mut self, session: &ExplorationSession) {
        self.updated = Utc::now();
        self.status = session.status();
        self.snapshot = snapshot_value(session);
    }
}

fn snapshot_value(session: &ExplorationSession) -> serde_json::Value {
    serde_json::from_str(&session.to_json()).expect("snapshot is JSON")
}

/// Session ids are 32 lowercase hex digits; anything else is never a file
/// name we wrote.
pub fn is_valid_id(id: &str) -> bool {
    id.len() == 32
        && id
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

pub fn new_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

#[derive(Debug, Clone)]
pub struct FileStore {
    dir: PathBuf,
}

impl FileStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FileStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    pub fn load(&self, id: &str) -> Result<SessionRecord> {
        if !is_valid_id(id) {
            return Err(ServiceError::NotFound(id.to_owned()));
        }
        let text = match fs::read_to_string(self.path(id)) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => {
                return Err(ServiceError::NotFound(id.to_owned()))
            }
            Err(e) => return Err(e.into()),
        };
        serde_json::from_str(&text).map_err(|e| ServiceError::Corrupt {
            id: id.to_owned(),
            message: e.to_string(),
        })
    }

    pub fn exists(&self, id: &str) -> bool {
        is_valid_id(id) && self.path(id).exists()
    }

    /// Writes to a temporary file in the same directory and renames it over
    /// the old record, so a crash leaves either the old or the new state.
    pub fn save(&self, record: &SessionRecord) -> Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        let text = serde_json::to_string_pretty(record).expect("record serializes");
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(&record.id)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Ids of all stored sessions, sorted.
    pub fn ids(&self) -> Result<Vec<String>> {
        let mut ids = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let name = entry?.file_name();
            if let Some(id) = name.to_str().and_then(|n| n.strip_suffix(".json")) {
                if is_valid_id(id) {
                    ids.push(id.to_owned());
                }
            }
        }
        ids.sort();
        Ok(ids)
    }
}
