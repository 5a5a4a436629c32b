//! Stopping a session after every answer, restoring it from its JSON
//! snapshot and finishing it gives the same result as an uninterrupted run.

use triex_core::format::parse_triadic_json;
use triex_core::{
    Examples, Expert, ExplorationSession, OracleExpert, SessionOptions, TriadicContext,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain = parse_triadic_json(include_str!("../data/t1.json"))?;
    let empty = TriadicContext::empty(domain.attributes().to_vec(), domain.conditions().to_vec())?;
    let mut oracle = OracleExpert::triadic(domain);

    let mut snapshot =
        ExplorationSession::new(Examples::Triadic(empty), None, SessionOptions::default())?
            .to_json();
    loop {
        let mut session = ExplorationSession::from_json(&snapshot)?;
        let Some(q) = session.pending().cloned() else {
            println!("finished after {} questions", session.seq());
            print!(
                "{}",
                triex_core::exploration::transcript_csv(session.universe(), session.transcript())
            );
            break;
        };
        println!(
            "restored at question {}: {}",
            session.seq() + 1,
            q.render(session.universe())
        );
        let answer = oracle.answer(session.universe(), &q)?;
        session.submit(answer)?;
        snapshot = session.to_json();
        println!("  snapshot: {} bytes", snapshot.len());
    }
    Ok(())
}
