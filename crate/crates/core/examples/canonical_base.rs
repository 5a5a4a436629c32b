//! Canonical bases, absolute and relative to background implications.
//!
//! `cargo run -p triex-core --example canonical_base [file.cxt]`

use triex_core::format::parse_burmeister;
use triex_core::{canonical_base, FormalContext, ImplicationSet};

const DEFAULT: &str = "B

5
4

duck
dog
fish
frog
bat
flies
swims
legs
mammal
X.X.
..XX
.X..
.XX.
X.XX
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_owned(),
    };
    let ctx: FormalContext = parse_burmeister(&text)?;
    let base = canonical_base(&ctx, &ImplicationSet::new())?;
    println!("canonical base ({} implications):", base.len());
    for imp in &base {
        println!("  {}", imp.render(ctx.attributes()));
    }

    // Treat the first implication as known and compute what is left.
    if let Some(first) = base.iter().next() {
        let l0: ImplicationSet = [first.clone()].into_iter().collect();
        let rel = canonical_base(&ctx, &l0)?;
        println!("\nrelative to {{{}}}:", first.render(ctx.attributes()));
        for imp in &rel {
            println!("  {}", imp.render(ctx.attributes()));
        }
    }
    Ok(())
}
