//! Lipschitz constants of iterated maps and convergence verdicts for their
//! series, the engine behind the Lipschitz-series fixed point certificates.

use gfix::analysis::{
    classify_tail, iterated_lipschitz, lipschitz_constant, series_converges, CoefficientSeq,
    SeqFamily,
};
use gfix::gspace::{AnalyticGSpace, FiniteGSpace};
use gfix::map::{AffineMap, TabulatedMap};

fn main() {
    let three = FiniteGSpace::three_point();
    let map = TabulatedMap::three_point_example_map();
    println!(
        "three-point map (0,1 -> 0, 2 -> 1): Lip(T) = {}",
        lipschitz_constant(&three, &map).unwrap()
    );
    let lips = iterated_lipschitz(&three, &map, 6).unwrap();
    println!(
        "  Lip(T^1..T^6) = {:?}",
        lips.iter().map(|v| v.get()).collect::<Vec<_>>()
    );
    let tail = classify_tail(&lips.iter().map(|v| v.get()).collect::<Vec<_>>());
    println!("  series of iterated constants: {:?} ({})", tail.verdict, tail.detail);

    let interval = AnalyticGSpace::interval_maxdiff();
    let t = AffineMap::sixteenth();
    let lips = iterated_lipschitz(&interval, &t, 4).unwrap();
    println!(
        "x/16 on [0,1] (max-difference): Lip(T^1..T^4) = {:?}",
        lips.iter().map(|v| v.get()).collect::<Vec<_>>()
    );

    // Coefficient-series verdicts for the builtin families.
    for (label, family) in [
        ("(1/(1+2^n))^2", SeqFamily::InvSqShifted { c: 1.0 }),
        ("1/n", SeqFamily::Harmonic),
        ("0.9^n", SeqFamily::Geometric { q: 1.0, rho: 0.9 }),
        ("constant 0.3", SeqFamily::Constant { value: 0.3 }),
    ] {
        let seq = CoefficientSeq::new(family, 32).unwrap();
        let rep = series_converges(&seq).unwrap();
        println!(
            "sum of {label}: {:?} (partial sum {:.6}; {})",
            rep.verdict, rep.partial_sum, rep.detail
        );
    }
}
