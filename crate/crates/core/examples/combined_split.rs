//! The combined procedure: every pipeline stage for one extension of the
//! first part, then the end-to-end solve compared with the oracle.

use bsaf::combined_split::{derive_splitting, solve_split};
use bsaf::io::{parse_framework, serialize_trace};
use bsaf::{enumerate, Semantics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_framework(include_str!("data/mixed.bsaf"))?;
    let a1 = f.set(["a", "b", "c", "d"])?;
    let spec = derive_splitting(&f, &a1)?;
    print!("{}", serialize_trace(&spec.build_reduced(&f.set(["a"])?)?));

    for sem in Semantics::SPLITTABLE {
        let split = solve_split(&f, &a1, sem)?;
        let oracle = enumerate(&f, sem)?;
        println!(
            "# {sem}: {} of {} extensions{}",
            split.len(),
            oracle.len(),
            if split.possibly_incomplete {
                " (sound only)"
            } else {
                ""
            }
        );
    }
    Ok(())
}
