//! Derivation operators, closure and subposition on the two-condition
//! context with a single object.

use triex_core::format::parse_triadic_json;
use triex_core::{AttrSet, FormalContext};

fn show(ctx: &FormalContext, set: &AttrSet) -> String {
    format!("{{{}}}", ctx.attribute_names(set).join(", "))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = parse_triadic_json(include_str!("../data/t1.json"))?;
    for (b, slice) in t.conditions().iter().zip(t.slices()) {
        println!("condition {b}");
        let all = slice.object_set(slice.objects())?;
        println!(
            "  G'      = {}",
            show(&slice, &slice.derive_attributes(&all)?)
        );
        for m in slice.attributes() {
            let x = slice.attribute_set(&[m])?;
            let ext = slice.derive_objects(&x)?;
            println!(
                "  {{{m}}}'   = {:?}   {{{m}}}'' = {}",
                ext.iter().map(|&g| &slice.objects()[g]).collect::<Vec<_>>(),
                show(&slice, &slice.closure(&x)?)
            );
        }
        println!(
            "  ∅''     = {}",
            show(&slice, &slice.closure(&AttrSet::new())?)
        );
    }

    let slices = t.slices();
    let sub = FormalContext::subposition(&[&slices[0], &slices[1]])?;
    println!("\nsubposition:");
    for (g, name) in sub.objects().iter().enumerate() {
        println!("  {name:<6} {}", show(&sub, sub.row(g)));
    }
    println!(
        "\nas Burmeister:\n{}",
        triex_core::format::to_burmeister(&sub)
    );
    Ok(())
}
