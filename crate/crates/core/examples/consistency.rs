//! Checks consistency locally and exactly, on the bird knowledge base and on
//! a knowledge base whose conditionings contradict each other.
//!
//! `cargo run --example consistency`

use palc::oracle::{check_consistency_exact, Consistency, InconsistencyReport};
use palc::parser::load_kb;
use palc::propagation::{check_consistency_local, LocalVerdict};

const CONTRADICTORY: &str = "
concept A.
concept B.
pcond A -> B : [0.3, 0.5].
pcond B -> A : 0.
";

fn main() {
    for (name, text) in [("birds", include_str!("birds.palc")), ("contradictory", CONTRADICTORY)] {
        let kb = load_kb(text).expect("example parses");
        println!("# {name}");
        match check_consistency_local(&kb) {
            LocalVerdict::ConsistentSoFar => println!("local: no conflict found"),
            LocalVerdict::Inconsistent(r) => {
                println!("local: {}", r.conflict);
                print!("{}", r.trace.render());
            }
        }
        match check_consistency_exact(&kb).expect("small signature") {
            Consistency::Consistent { witness } => {
                println!("exact: consistent, witness weights {:?}", witness.weights().iter().map(ToString::to_string).collect::<Vec<_>>())
            }
            Consistency::Inconsistent(InconsistencyReport::ForcedEmptyAntecedent { antecedent, .. }) => {
                println!("exact: `{antecedent}` is forced to probability 0")
            }
            Consistency::Inconsistent(InconsistencyReport::EmptyPolytope { multipliers }) => {
                println!("exact: empty polytope, Farkas multipliers {multipliers:?}")
            }
        }
        println!();
    }
}
