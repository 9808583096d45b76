//! Chainability thresholds, witness chains, and blocking pairs on the
//! builtin finite spaces.

use gfix::chains::{chainability_threshold, find_chain, is_chainable};
use gfix::gspace::{FiniteGSpace, GMetricSpace, GValue};

fn show(name: &str, space: &FiniteGSpace, eps_values: &[f64]) {
    let threshold = chainability_threshold(space).unwrap();
    println!("{name}: minimal chainability threshold = {threshold}");
    for &e in eps_values {
        let eps = GValue::new(e).unwrap();
        let v = is_chainable(space, eps).unwrap();
        if v.chainable {
            println!("  eps = {e}: chainable, max degree {}", v.max_degree);
            for ((x, y), chain) in v.witness_chains.iter().take(3) {
                let path: Vec<String> =
                    chain.nodes.iter().map(|n| space.point_label(n)).collect();
                println!(
                    "    {} -> {}: {}",
                    space.point_label(x),
                    space.point_label(y),
                    path.join(" -> ")
                );
            }
        } else {
            let (a, b) = v.blocking_pair.unwrap();
            println!(
                "  eps = {e}: not chainable, no chain from {} to {}",
                space.point_label(&a),
                space.point_label(&b)
            );
        }
    }
}

fn main() {
    // The discrete space is 1-chainable but not 1/2-chainable.
    show("discrete(3)", &FiniteGSpace::discrete(3), &[1.0, 0.5]);
    show("two-point", &FiniteGSpace::two_point(), &[2.0, 1.5]);
    show("three-point", &FiniteGSpace::three_point(), &[2.0]);

    // Single witness query with the deterministic tie-break.
    let s = FiniteGSpace::three_point();
    let chain = find_chain(&s, 2, 0, GValue::new(2.0).unwrap())
        .unwrap()
        .unwrap();
    println!(
        "three-point, 2 -> 0 at eps = 2: nodes {:?}, degree {}",
        chain.nodes,
        chain.degree()
    );
}
