//! Parses a knowledge base with mistakes, prints the diagnostics, then
//! round-trips the bird knowledge base through the writer.
//!
//! `cargo run --example parse_roundtrip`

use palc::parser::{load_kb, parse_kb, serialize_kb};

const BROKEN: &str = "
concept bird.
concept penguin.
pcond bird -> penguin : [1.2, 1.0].
penguin < (and bird.
pcond penguin -> bird : 1.
";

fn main() {
    let parsed = parse_kb(BROKEN);
    for d in &parsed.diagnostics {
        println!("broken.palc:{d}");
    }
    println!("kept {} conditioning(s) after recovery\n", parsed.conditionings.len());

    let kb = load_kb(include_str!("birds.palc")).expect("example parses");
    let text = serialize_kb(&kb);
    print!("{text}");
    assert_eq!(load_kb(&text).expect("writer output parses"), kb);
    println!("\nround trip ok");
}
