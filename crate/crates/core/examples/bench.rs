//! Oracle against split solve on a balanced chain-like framework.
//!
//! cargo run --release --example bench -- [N]

use bsaf::harness::{bench, BENCH_CSV_HEADER};
use bsaf::split_finder::{best_cut, SplitMode};
use bsaf::{Framework, Semantics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(12);
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let mut builder = Framework::builder().args(names.clone());
    for w in names.windows(2) {
        builder = builder.attack([w[0].clone()], w[1].clone());
    }
    for w in names.windows(3).step_by(3) {
        builder = builder.support([w[2].clone()], w[1].clone());
    }
    let f = builder.build()?;
    let cut = best_cut(&f).ok_or("no cut")?;

    println!("{BENCH_CSV_HEADER}");
    for sem in [
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Stable,
    ] {
        println!("{}", bench(&f, &cut, sem, SplitMode::Combined)?.csv_row());
    }
    Ok(())
}
