//! Picard iteration traces and independent Cauchy verification of the orbit.

use gfix::gspace::{AnalyticGSpace, FiniteGSpace, GValue};
use gfix::map::{AffineMap, TabulatedMap};
use gfix::oracle::verify_cauchy;
use gfix::solver::picard;

fn gv(v: f64) -> GValue {
    GValue::new(v).unwrap()
}

fn main() {
    // The interval example: T(x) = x/16 on [0,1] under G = max of values.
    let space = AnalyticGSpace::interval_maxval();
    let map = AffineMap::sixteenth();
    let trace = picard(&space, &map, 1.0, gv(1e-12), 1000).unwrap();
    println!(
        "T(x) = x/16 from x0 = 1: converged = {}, iterations = {}, x* = {:e}, residual = {:e}",
        trace.converged,
        trace.iterations,
        trace.points.last().unwrap(),
        trace.residual.get()
    );
    for (n, (x, step)) in trace.points.iter().zip(&trace.steps).enumerate().take(5) {
        println!("  n = {n}: x = {x:.10}, d_G(x_n, x_n+1) = {step}");
    }

    // Independent Cauchy verification along the orbit.
    let eps_grid: Vec<GValue> = [1e-1, 1e-3, 1e-6].iter().map(|&e| gv(e)).collect();
    let cauchy = verify_cauchy(&space, &trace.points, &eps_grid).unwrap();
    for (eps, n) in &cauchy.thresholds {
        match n {
            Some(n) => println!("  G(x_n, x_m, x_m) < {eps} for all m, n >= {n}"),
            None => println!("  eps = {eps}: not Cauchy within the trace"),
        }
    }

    // A finite-space orbit that stops in one application.
    let two = FiniteGSpace::two_point();
    let zero = TabulatedMap::constant(2, 0).unwrap();
    let trace = picard(&two, &zero, 1, gv(1e-12), 100).unwrap();
    println!(
        "constant map on the two-point space from 1: points {:?}, iterations {}",
        trace.points, trace.iterations
    );

    // A swap has no fixed point; the trace reports non-convergence.
    let swap = TabulatedMap::new(vec![1, 0], "swap").unwrap();
    let trace = picard(&two, &swap, 0, gv(1e-12), 8).unwrap();
    println!(
        "swap map: converged = {}, iterations = {}, residual = {}",
        trace.converged, trace.iterations, trace.residual
    );
}
