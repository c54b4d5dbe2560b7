//! Tightest entailed ranges from the exact oracle, with the distributions
//! that attain each bound.
//!
//! `cargo run --example entailment`

use palc::concept::Concept;
use palc::oracle::ExactOracle;
use palc::parser::load_kb;

fn main() {
    let kb = load_kb(include_str!("birds.palc")).expect("example parses");
    let oracle = ExactOracle::new(&kb).expect("small signature");
    println!("{} atoms, {} constraints", oracle.space().len(), oracle.polytope().constraints.len());

    let queries = [
        ("antarctic_bird", "flying_object"),
        ("bird", "penguin"),
        ("animal", "bird"),
        ("penguin", "antarctic_animal"),
    ];
    for (a, c) in queries {
        let r = oracle.entail_range(&Concept::atom(a), &Concept::atom(c)).expect("consistent, non-vacuous");
        assert!(r.verify(oracle.polytope()));
        println!("{a} -> {c} : {}", r.range);
        if let Some(w) = &r.hi_witness {
            for (i, p) in w.weights().iter().enumerate().filter(|(_, p)| !num_traits::Zero::is_zero(*p)) {
                println!("    upper witness  {} = {p}", oracle.space().atom_concept(i));
            }
        }
    }

    let flyer = Concept::atom("flying_object");
    let bird = Concept::atom("bird");
    println!(
        "penguin subsumed by not flying_object: {}",
        oracle.subsumes_probabilistic(&Concept::not(flyer), &Concept::atom("penguin")).unwrap()
    );
    println!("bird subsumed by flying_object: {}", oracle.subsumes_probabilistic(&Concept::atom("flying_object"), &bird).unwrap());
}
