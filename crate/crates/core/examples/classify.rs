//! Classifies both bird terminologies and prints their hierarchies.
//!
//! `cargo run --example classify`

use palc::hierarchy::classify;
use palc::parser::load_kb;

fn main() {
    for (name, text) in [("birds_v1.palc", include_str!("birds_v1.palc")), ("birds.palc", include_str!("birds.palc"))] {
        let kb = load_kb(text).expect("example parses");
        let h = classify(kb.terminology());
        println!("# {name}");
        print!("{}", h.render());
        println!();
    }
}
