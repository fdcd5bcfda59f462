//! Extensions of a small framework under every semantics.
//!
//! cargo run --example enumerate [-- FILE]

use bsaf::io::{parse_framework, serialize_extensions};
use bsaf::{enumerate, Semantics};

const DEFAULT: &str = include_str!("data/example1.bsaf");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let f = parse_framework(&text)?;
    for sem in Semantics::ALL {
        println!("## {sem}");
        print!("{}", serialize_extensions(&f, &enumerate(&f, sem)?));
    }
    Ok(())
}
