//! Shared corpus generation for the integration suites: random valid finite
//! G-metric type spaces and random self-maps, fully seeded.
//!
//! Spaces are built as lifts of random finite metrics: points scattered in
//! the plane under the Euclidean or Manhattan distance, then
//! G(x,y,z) = max of the three pairwise distances or their perimeter sum,
//! optionally rescaled. Both lifts satisfy the ternary distance axioms with
//! K = 1, which the validator re-checks for every generated space.

#![allow(dead_code)]

use gfix::gspace::{validate_axioms, FiniteGSpace};
use gfix::map::TabulatedMap;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid space with `n` points and K = 1.
pub fn random_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteGSpace {
    assert!(n >= 1);
    loop {
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0)))
            .collect();
        let manhattan = rng.gen_bool(0.5);
        let dist = |a: (f64, f64), b: (f64, f64)| {
            if manhattan {
                (a.0 - b.0).abs() + (a.1 - b.1).abs()
            } else {
                ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
            }
        };
        let mut separated = true;
        for i in 0..n {
            for j in (i + 1)..n {
                if dist(pts[i], pts[j]) < 0.05 {
                    separated = false;
                }
            }
        }
        if !separated {
            continue;
        }
        let perimeter_form = rng.gen_bool(0.5);
        let scale = rng.gen_range(0.5..2.0);
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let space = FiniteGSpace::from_fn(labels, 1.0, |i, j, k| {
            let dij = dist(pts[i], pts[j]);
            let djk = dist(pts[j], pts[k]);
            let dik = dist(pts[i], pts[k]);
            let g = if perimeter_form {
                dij + djk + dik
            } else {
                dij.max(djk).max(dik)
            };
            scale * g
        })
        .expect("lifted table is total");
        return space;
    }
}

/// A random valid space whose validator verdict has been asserted clean.
pub fn random_valid_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteGSpace {
    let space = random_space(rng, n);
    let cutoff = (n.saturating_sub(1)).max(1);
    let report = validate_axioms(&space, cutoff).expect("validator runs");
    assert!(
        report.all_hold(),
        "generated space failed axioms: {report:?}"
    );
    space
}

/// A uniformly random self-map given by its image table.
pub fn random_map(rng: &mut ChaCha8Rng, n: usize) -> TabulatedMap {
    let images: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    TabulatedMap::new(images, "random").expect("random images are in range")
}

/// Deterministic corpus of (space, map) pairs with sizes cycling 2..=6.
pub fn corpus(seed: u64, count: usize) -> Vec<(FiniteGSpace, TabulatedMap)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let n = 2 + i % 5;
            let space = random_valid_space(&mut rng, n);
            let map = random_map(&mut rng, n);
            (space, map)
        })
        .collect()
}
