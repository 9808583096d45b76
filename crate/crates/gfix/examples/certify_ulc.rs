//! Certificates for the uniformly-locally-contractive theorem on the two
//! finite example spaces, with the a-priori bound checked against the orbit.

use gfix::analysis::minimal_uniform_lambda;
use gfix::gspace::{FiniteGSpace, GMetricSpace, GValue};
use gfix::map::{SelfMap, TabulatedMap};
use gfix::oracle::brute_fixed_points;
use gfix::solver::{bound_ulc, certify, CertifyOptions, TheoremId};

fn demo(name: &str, space: &FiniteGSpace, map: &TabulatedMap, x0: usize) {
    let (eps, lam) = (4.0, 0.5);
    let opts = CertifyOptions {
        eps: Some(eps),
        lambda: Some(lam),
        x0: Some(x0),
        ..CertifyOptions::default()
    };
    let cert = certify(space, map, TheoremId::UlcChainable, &opts).unwrap();
    println!("{name}: certificate valid = {}", cert.valid);
    for h in &cert.hypotheses {
        println!(
            "  [{}] {} - {}",
            if h.holds { "ok" } else { "FAIL" },
            h.name,
            h.detail
        );
    }
    println!(
        "  minimal uniform lambda at eps = {eps}: {:?}",
        minimal_uniform_lambda(space, map, GValue::new(eps).unwrap()).unwrap()
    );

    let oracle = brute_fixed_points(space, map).unwrap();
    let star = space.index_of(&oracle.fixed_points[0]).unwrap();
    println!("  oracle fixed points: {:?}", oracle.fixed_points);
    println!("  m | G(x_m, x*, x*) | bound(m)");
    for m in 1..=6usize {
        let xm = map.apply_n(&x0, m);
        let g = space.g_idx(xm, star, star).get();
        let b = cert.bound_at(m).unwrap().get();
        println!("  {m} | {g:>14} | {b}");
    }
    // The certificate bound is the displayed geometric expression.
    let direct = bound_ulc(lam, space.relaxation(), 1, GValue::new(eps).unwrap(), 3).unwrap();
    println!("  direct bound expression at m = 3, degree 1: {direct}");
}

fn main() {
    demo(
        "two-point space, T = const 0",
        &FiniteGSpace::two_point(),
        &TabulatedMap::constant(2, 0).unwrap(),
        1,
    );
    demo(
        "three-point space, example map",
        &FiniteGSpace::three_point(),
        &TabulatedMap::three_point_example_map(),
        2,
    );
}
