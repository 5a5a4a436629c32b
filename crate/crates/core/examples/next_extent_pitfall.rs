//! Why condition sets follow a fixed schedule: walking the extents of the
//! growing implication context misses condition sets on the two-condition
//! domain.

use triex_core::exploration::next_extent_exploration;
use triex_core::format::parse_triadic_json;
use triex_core::{
    triadic_exploration, ExplorationOutcome, OracleExpert, SessionOptions, TriadicContext,
};

fn report(title: &str, out: &ExplorationOutcome) {
    println!("{title}: {} questions", out.question_count());
    for e in out.kc.entries() {
        println!(
            "  {:<10} holds for {{{}}}",
            e.implication.render(&out.universe.attributes),
            out.universe.render_conditions(&e.holds_for)
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain = parse_triadic_json(include_str!("../data/t1.json"))?;
    let empty = TriadicContext::empty(domain.attributes().to_vec(), domain.conditions().to_vec())?;

    let walked = next_extent_exploration(
        empty.clone(),
        &mut OracleExpert::triadic(domain.clone()),
        SessionOptions::default(),
    )?;
    report("extent walk", &walked);

    let scheduled = triadic_exploration(
        empty,
        None,
        &mut OracleExpert::triadic(domain),
        SessionOptions::default(),
    )?;
    report("fixed schedule", &scheduled);
    Ok(())
}
