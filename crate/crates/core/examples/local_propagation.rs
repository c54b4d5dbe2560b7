//! Local propagation on the triangle examples: point values, then interval
//! values that tighten over a few sweeps. Prints the trace of the second run.
//!
//! `cargo run --example local_propagation`

use palc::concept::Concept;
use palc::parser::load_kb;
use palc::propagation::{propagate_to_fixpoint, PropagationOptions, PropagationOutcome};

fn main() {
    let (a, b, c) = (Concept::atom("A"), Concept::atom("B"), Concept::atom("C"));

    let points = load_kb(include_str!("triangle_points.palc")).expect("example parses");
    let p = match propagate_to_fixpoint(&points, &PropagationOptions::default()) {
        PropagationOutcome::Converged(p) => p,
        other => panic!("{other:?}"),
    };
    println!("point values: C -> B = {}", p.matrix.lookup(&c, &b).unwrap());

    let intervals = load_kb(include_str!("triangle_intervals.palc")).expect("example parses");
    let p = match propagate_to_fixpoint(&intervals, &PropagationOptions::default()) {
        PropagationOutcome::Converged(p) => p,
        other => panic!("{other:?}"),
    };
    println!(
        "interval values after {} sweeps: B -> A = {} (sweep {}), A -> C = {} (sweep {})",
        p.sweeps,
        p.matrix.lookup(&b, &a).unwrap(),
        p.settled_at(&b, &a).unwrap(),
        p.matrix.lookup(&a, &c).unwrap(),
        p.settled_at(&a, &c).unwrap(),
    );
    println!();
    for line in p.trace.render().lines().filter(|l| l.contains(": B -> A ") || l.contains(": A -> C ")) {
        println!("{line}");
    }
}
