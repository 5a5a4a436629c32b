//! Oracle exploration of the public-transport domain under both variants.
//!
//! `cargo run -p triex-core --example transport [lexicographic|reverse-lexicographic]`

use triex_core::format::parse_triadic_json;
use triex_core::{
    triadic_exploration, OracleExpert, SessionOptions, TieOrder, TriadicContext, Variant,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order: TieOrder = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(TieOrder::ReverseLexicographic);
    let domain = parse_triadic_json(include_str!("../data/transport.json"))?;
    let empty = TriadicContext::empty(domain.attributes().to_vec(), domain.conditions().to_vec())?;

    for variant in [Variant::RecordPartialHolds, Variant::OnlyFullHolds] {
        let out = triadic_exploration(
            empty.clone(),
            None,
            &mut OracleExpert::triadic(domain.clone()),
            SessionOptions::default().variant(variant).order(order),
        )?;
        println!("{variant:?}: {} questions", out.question_count());
        if variant == Variant::RecordPartialHolds {
            print!("{}", out.transcript_csv());
            println!("\ncontext of conditional implications:");
            for e in out.kc.entries() {
                println!(
                    "  {:<45} {{{}}}",
                    e.implication.render(&out.universe.attributes),
                    out.universe.render_conditions(&e.holds_for)
                );
            }
        }
        println!();
    }
    Ok(())
}
