//! Atoms of a small terminology and the distribution induced by counting a
//! finite domain.
//!
//! `cargo run --example induced_probability`

use std::collections::HashMap;

use palc::atoms::{enumerate_atoms, induced_probability, Atom};
use palc::concept::Concept;
use palc::parser::load_kb;

fn main() {
    let kb = load_kb("A < top. B < top. C = (and A B).").expect("parses");
    let space = enumerate_atoms(kb.terminology()).expect("small signature");
    let names: Vec<&str> = space.signature().iter().map(|s| s.as_str()).collect();
    println!("signature {names:?}, {} atoms", space.len());

    // 100 individuals: 40 in A, 20 in B, 10 in both.
    let count = |in_a: bool, in_b: bool| {
        let signs: Vec<bool> = names
            .iter()
            .map(|n| match *n {
                "A" => in_a,
                "B" => in_b,
                _ => in_a && in_b,
            })
            .collect();
        Atom::from_signs(&signs)
    };
    let cardinalities = HashMap::from([
        (count(false, false), 50),
        (count(false, true), 10),
        (count(true, true), 10),
        (count(true, false), 30),
    ]);
    let p = induced_probability(&space, 100, &cardinalities).expect("counts match the domain");
    for (i, w) in p.weights().iter().enumerate() {
        println!("  {} -> {w}", space.atom_concept(i));
    }
    for c in ["A", "B", "C", "(or A B)"] {
        let concept = palc::parser::parse_concept(c).expect("parses");
        println!("P({c}) = {}", p.probability_of(&concept, &space).unwrap());
    }
    println!("P(top) = {}", p.probability_of(&Concept::Top, &space).unwrap());
}
