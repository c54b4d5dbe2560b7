//! Every pairwise range among the named bird concepts, by local propagation
//! and by the exact oracle, with the slack local propagation leaves.
//!
//! `cargo run --example compare_methods`

use palc::concept::Concept;
use palc::oracle::{ExactOracle, PairRange};
use palc::parser::load_kb;
use palc::propagation::{propagate_to_fixpoint, PropagationOptions};

fn main() {
    let kb = load_kb(include_str!("birds.palc")).expect("example parses");
    let named: Vec<Concept> = kb.terminology().signature().iter().map(|s| Concept::Atom(s.clone())).collect();
    let local = propagate_to_fixpoint(&kb, &PropagationOptions::default());
    let matrix = local.matrix().expect("consistent");
    let exact = ExactOracle::new(&kb).unwrap().minimal_ranges(&named).unwrap();

    let mut loose = 0;
    for (k, r) in exact.iter().enumerate() {
        let (a, c) = (&named[k / named.len()], &named[k % named.len()]);
        let PairRange::Entailed(e) = r else { continue };
        let l = matrix.lookup(a, c).unwrap();
        assert!(l.contains_interval(&e.range));
        if *l != e.range {
            loose += 1;
            println!("{a} -> {c}: local {l}, exact {}", e.range);
        }
    }
    println!("{loose} of {} pairs are looser locally", exact.len());
}
