//! Exploration with several experts, each holding a different view of the
//! same attributes. Counterexamples go only to the expert who gave them.

use triex_core::format::parse_family_json;
use triex_core::{family_exploration, ContextFamily, Panel, SessionOptions};

const VIEWS: &str = r#"{
  "attributes": ["encrypted", "backed-up", "public"],
  "members": {
    "ops": {
      "objects": ["db", "web"],
      "incidence": [["db", "encrypted"], ["db", "backed-up"], ["web", "public"], ["web", "backed-up"]]
    },
    "security": {
      "objects": ["db", "wiki"],
      "incidence": [["db", "encrypted"], ["db", "backed-up"], ["wiki", "public"]]
    }
  }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let views = parse_family_json(VIEWS)?;
    let empty = ContextFamily::empty(views.attributes().to_vec(), views.member_ids())?;
    let out = family_exploration(
        empty,
        None,
        &mut Panel::oracles(&views),
        SessionOptions::default(),
    )?;

    print!("{}", out.transcript_csv());
    println!("\nper expert:");
    let fam = out.examples.as_family().expect("family run");
    for (id, ctx) in fam.members() {
        println!("  {id}: {:?}", ctx.objects());
    }
    println!("\nagreed by both:");
    let both = (0..fam.len()).collect();
    for imp in &out.kc.implications_for(&both) {
        println!("  {}", imp.render(&out.universe.attributes));
    }
    Ok(())
}
