//! Cut discovery from the condensation of the dependency graph.

use bsaf::io::{format_extension, parse_framework};
use bsaf::split_finder::{
    best_cut_for, condense, dependency_graph_for, enumerate_cuts_for, SplitMode,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_framework(include_str!("data/mixed.bsaf"))?;
    for mode in SplitMode::ALL {
        let sccs = condense(&dependency_graph_for(&f, mode));
        let rendered: Vec<String> = sccs.iter().map(|c| f.render_set(c)).collect();
        println!("# {mode}: components {}", rendered.join(" "));
        for cut in enumerate_cuts_for(&f, mode) {
            println!("{}", format_extension(&f, &cut));
        }
        if let Some(best) = best_cut_for(&f, mode) {
            println!("# best {}", format_extension(&f, &best));
        }
    }
    Ok(())
}
