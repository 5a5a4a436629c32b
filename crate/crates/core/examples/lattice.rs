//! The labeled lattice of conditional implications of a triadic domain.
//!
//! `cargo run -p triex-core --example lattice [domain.json] [--dot]`

use triex_core::conditional_implication_lattice;
use triex_core::format::parse_triadic_json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dot = args.iter().any(|a| a == "--dot");
    let text = match args.iter().find(|a| !a.starts_with("--")) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../data/transport.json").to_owned(),
    };
    let lattice = conditional_implication_lattice(&parse_triadic_json(&text)?);
    if dot {
        print!("{}", lattice.to_dot());
        return Ok(());
    }
    for node in &lattice.nodes {
        let intent = lattice.condition_names(&node.intent).join(", ");
        if node.universe {
            println!("{{{intent}}}: all implications");
            continue;
        }
        println!("{{{intent}}}: {} implications in extent", node.extent.len());
        for label in lattice.render(&node.label) {
            println!("    {label}");
        }
    }
    println!("covering pairs: {:?}", lattice.edges);
    Ok(())
}
