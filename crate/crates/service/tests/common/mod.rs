#![allow(dead_code)]

use std::sync::Arc;

use triex_core::exploration::wire::{AnswerWire, QuestionView};
use triex_core::exploration::{Question, Universe};
use triex_core::{AttrSet, Expert};
use triex_service::{router, serve, FileStore, SessionService};

pub fn t1() -> triex_core::TriadicContext {
    triex_core::format::parse_triadic_json(include_str!("../../../core/data/t1.json")).unwrap()
}

pub fn transport() -> triex_core::TriadicContext {
    triex_core::format::parse_triadic_json(include_str!("../../../core/data/transport.json"))
        .unwrap()
}

fn indices(names: &[String], all: &[String]) -> AttrSet {
    names
        .iter()
        .map(|n| all.iter().position(|a| a == n).unwrap())
        .collect()
}

/// The question a view describes.
pub fn question_of(u: &Universe, v: &QuestionView) -> Question {
    Question {
        conditions: indices(&v.conditions, &u.conditions),
        premise: indices(&v.premise, &u.attributes),
        conclusion: indices(&v.conclusion, &u.attributes),
    }
}

/// The wire answer `expert` gives to `v`.
pub fn answer_for(expert: &mut impl Expert, u: &Universe, v: &QuestionView) -> AnswerWire {
    let ans = expert.answer(u, &question_of(u, v)).unwrap();
    AnswerWire::from_answer(u, &ans, Some(v.seq))
}

pub struct Server {
    pub base: String,
    pub dir: tempfile::TempDir,
}

/// Starts a service on an ephemeral port over `dir`.
pub async fn start_in(dir: tempfile::TempDir, static_dir: Option<std::path::PathBuf>) -> Server {
    let svc = Arc::new(SessionService::new(FileStore::open(dir.path()).unwrap()));
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    tokio::spawn(serve(listener, router(svc, static_dir)));
    Server { base, dir }
}

pub async fn start() -> Server {
    start_in(tempfile::tempdir().unwrap(), None).await
}
