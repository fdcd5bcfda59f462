//! Seeded random frameworks: the same seed always gives the same text.

use bsaf::harness::{gen_random, GenConfig};
use bsaf::io::{parse_framework, serialize_framework};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GenConfig {
        seed: 2024,
        n_args: 6,
        p_attack: 0.25,
        p_support: 0.15,
        max_tail: 2,
        support_dag: true,
    };
    let text = serialize_framework(&gen_random(&cfg)?);
    assert_eq!(text, serialize_framework(&gen_random(&cfg)?));
    assert_eq!(serialize_framework(&parse_framework(&text)?), text);
    print!("{text}");
    Ok(())
}
