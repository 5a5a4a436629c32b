//! Starts the service on an ephemeral port and answers a session over HTTP,
//! printing each exchange.
//!
//!     cargo run -p triex-service --example http_session

use std::sync::Arc;

use serde_json::{json, Value};
use triex_core::exploration::wire::{AnswerWire, QuestionView};
use triex_core::exploration::Question;
use triex_core::{Expert, OracleExpert, Universe};
use triex_service::{router, serve, FileStore, SessionService};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = tempfile::tempdir()?;
    let svc = Arc::new(SessionService::new(FileStore::open(data.path())?));
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let base = format!("http://{}/api/sessions", listener.local_addr()?);
    tokio::spawn(serve(listener, router(svc, None)));

    let domain =
        triex_core::format::parse_triadic_json(include_str!("../../core/data/transport.json"))?;
    let u = Universe {
        attributes: domain.attributes().to_vec(),
        conditions: domain.conditions().to_vec(),
    };
    let http = reqwest::Client::new();
    let created: Value = http
        .post(&base)
        .json(&json!({ "attributes": u.attributes, "conditions": u.conditions }))
        .send()
        .await?
        .json()
        .await?;
    let api = format!("{base}/{}", created["id"].as_str().unwrap());
    println!("session {api}");

    let mut oracle = OracleExpert::triadic(domain);
    let mut state = created;
    while !state["question"].is_null() {
        let view: QuestionView = serde_json::from_value(state["question"].clone())?;
        let index = |names: &[String], all: &[String]| {
            names
                .iter()
                .map(|n| all.iter().position(|a| a == n).unwrap())
                .collect()
        };
        let q = Question {
            conditions: index(&view.conditions, &u.conditions),
            premise: index(&view.premise, &u.attributes),
            conclusion: index(&view.conclusion, &u.attributes),
        };
        let answer = AnswerWire::from_answer(&u, &oracle.answer(&u, &q)?, Some(view.seq));
        println!(
            "{:>2}. {{{}}} {}  -> holds for {:?}{}",
            view.seq + 1,
            view.conditions.join(", "),
            view.text,
            answer.holds_for,
            answer
                .counterexample
                .as_ref()
                .map(|c| format!(", counterexample {}", c.name))
                .unwrap_or_default()
        );
        state = http
            .post(format!("{api}/answer"))
            .json(&answer)
            .send()
            .await?
            .json()
            .await?;
    }

    let lattice: Value = http
        .get(format!("{api}/lattice"))
        .send()
        .await?
        .json()
        .await?;
    for node in lattice["nodes"].as_array().unwrap() {
        println!("{} {}", node["intent"], node["label"]);
    }
    print!(
        "{}",
        http.get(format!("{api}/transcript"))
            .send()
            .await?
            .text()
            .await?
    );
    Ok(())
}
