//! Splitting along shared collective attacks: R-reduct, undecided links
//! and the `*0` modification, per extension of the first part.

use bsaf::attack_split::{derive_attack_splitting, solve_attack_split};
use bsaf::io::{format_extension, parse_framework, serialize_extensions, serialize_framework};
use bsaf::{enumerate, Semantics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_framework(include_str!("data/setaf.bsaf"))?;
    let a1 = f.set(["a", "b", "c"])?;
    let spec = derive_attack_splitting(&f, &a1)?.close();

    for e1 in enumerate(spec.f1(), Semantics::Admissible)? {
        let undecided = spec.undecided_links(&e1)?;
        println!(
            "# E1 = {}: {} undecided link(s)",
            format_extension(&f, &e1),
            undecided.len()
        );
        print!("{}", serialize_framework(&spec.star(&e1)?));
    }

    let split = solve_attack_split(&f, &a1, Semantics::Admissible)?;
    assert_eq!(split.extensions, enumerate(&f, Semantics::Admissible)?);
    println!("# admissible, recombined");
    print!("{}", serialize_extensions(&f, &split.extensions));
    Ok(())
}
