//! Validate the ternary distance axioms on the builtin example spaces and on
//! a deliberately broken table.

use gfix::gspace::{
    diameter, validate_axioms, AnalyticGSpace, FiniteGSpace, GMetricSpace,
};

fn report(name: &str, space: &FiniteGSpace, cutoff: usize) {
    let r = validate_axioms(space, cutoff).unwrap();
    println!(
        "{name}: {} (K = {}, {} points, diameter {}, G5 cutoff {}{})",
        if r.all_hold() { "all axioms hold" } else { "AXIOM FAILURE" },
        space.relaxation(),
        space.len(),
        diameter(space).unwrap(),
        r.g5_chain_cutoff,
        if r.sampled { ", sampled" } else { "" },
    );
    for a in &r.axioms {
        if !a.holds {
            let ce = a.counterexample.as_ref().unwrap();
            println!(
                "  {} fails at points {:?} chain {:?}: {} > {}",
                a.axiom, ce.points, ce.chain, ce.lhs, ce.rhs
            );
        }
    }
}

fn main() {
    report("discrete(4)", &FiniteGSpace::discrete(4), 3);
    report("two-point", &FiniteGSpace::two_point(), 1);
    report("three-point", &FiniteGSpace::three_point(), 2);

    // The interval family G = max{x,y,z} is the worked interval example;
    // strict validation of its sample grid shows it violates (G1) because
    // G(x,x,x) = x > 0 off the origin. The max-difference family is clean.
    let maxval = AnalyticGSpace::interval_maxval().with_grid(17).unwrap();
    report(
        "interval-maxval [0,1] (17-point grid)",
        &FiniteGSpace::sample_analytic(&maxval),
        1,
    );
    let maxdiff = AnalyticGSpace::interval_maxdiff().with_grid(17).unwrap();
    report(
        "interval-maxdiff [0,1] (17-point grid)",
        &FiniteGSpace::sample_analytic(&maxdiff),
        1,
    );

    // A corrupted three-point table: G(0,1,2) lowered under G(0,0,1).
    let mut entries = FiniteGSpace::three_point().table_entries();
    for e in &mut entries {
        if (e.0, e.1, e.2) == (0, 1, 2) {
            e.3 = 0.5;
        }
    }
    let broken = FiniteGSpace::new(
        vec!["0".into(), "1".into(), "2".into()],
        1.0,
        &entries,
    )
    .unwrap();
    report("three-point with G(0,1,2) = 0.5", &broken, 2);
}
