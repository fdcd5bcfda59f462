//! Splitting along backward supports: type-1 and type-2 constraints, and
//! the preferred case where only soundness holds.

use bsaf::io::{format_extension, serialize_extensions, serialize_framework};
use bsaf::support_split::{derive_support_splitting, solve_support_split};
use bsaf::{enumerate, Framework, Semantics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // d attacks c; a and b jointly support c
    let f = Framework::builder()
        .args(["a", "b", "c", "d"])
        .attack(["d"], "c")
        .support(["a", "b"], "c")
        .build()?;
    let a1 = f.set(["a", "c", "d"])?;
    let spec = derive_support_splitting(&f, &a1)?;

    for e1 in enumerate(spec.f1(), Semantics::Admissible)? {
        println!(
            "# E1 = {}: incompatible {}, closure-defeated {}",
            format_extension(&f, &e1),
            spec.support_incompatible(&e1)?.len(),
            spec.closure_defeated(&e1)?.len()
        );
        print!("{}", serialize_framework(&spec.s_reduct(&e1)?));
    }

    for sem in [Semantics::Admissible, Semantics::Preferred] {
        let split = solve_support_split(&f, &a1, sem)?;
        let oracle = enumerate(&f, sem)?;
        println!("# {sem}: split / oracle");
        print!("{}", serialize_extensions(&f, &split.extensions));
        print!("{}", serialize_extensions(&f, &oracle));
        assert!(split.extensions.is_subset(&oracle));
    }
    Ok(())
}
