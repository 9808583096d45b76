//! Property suites over randomly generated valid spaces: the structural
//! structural invariants attached to each module.

mod common;

use gfix::analysis::{
    check_local_contractive, iterated_lipschitz, lambda_scan, lipschitz_constant,
    minimal_uniform_lambda, replay_lambda_certificate, LambdaOutcome,
};
use gfix::chains::{chainability_threshold, is_chainable};
use gfix::gspace::{
    derived_metric, diameter, g_eval, validate_axioms, AnySpace, FiniteGSpace, GMetricSpace,
    GValue, SpaceFile,
};
use proptest::prelude::*;

fn seeded_space() -> impl Strategy<Value = FiniteGSpace> {
    (2usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = common::rng(seed);
        common::random_valid_space(&mut rng, n)
    })
}

fn seeded_space_and_map() -> impl Strategy<Value = (FiniteGSpace, gfix::map::TabulatedMap)> {
    (2usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = common::rng(seed);
        let space = common::random_valid_space(&mut rng, n);
        let map = common::random_map(&mut rng, n);
        (space, map)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn g_eval_is_permutation_invariant(space in seeded_space()) {
        let n = space.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let base = g_eval(&space, &x, &y, &z).unwrap();
                    for (a, b, c) in
                        [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)]
                    {
                        prop_assert_eq!(g_eval(&space, &a, &b, &c).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn derived_metric_is_symmetric_and_separating(space in seeded_space()) {
        let n = space.len();
        for x in 0..n {
            for y in 0..n {
                let dxy = derived_metric(&space, &x, &y).unwrap();
                let dyx = derived_metric(&space, &y, &x).unwrap();
                prop_assert_eq!(dxy, dyx);
                if x == y {
                    prop_assert_eq!(dxy.get(), 0.0);
                } else {
                    prop_assert!(dxy.get() > 0.0);
                }
            }
        }
    }

    #[test]
    fn chains_are_sound_minimal_and_bounded(space in seeded_space()) {
        let t = chainability_threshold(&space).unwrap();
        let at = is_chainable(&space, t).unwrap();
        prop_assert!(at.chainable);
        for ((x, y), chain) in &at.witness_chains {
            prop_assert!(chain.verify(&space));
            prop_assert_eq!(chain.nodes.first(), Some(x));
            prop_assert_eq!(chain.nodes.last(), Some(y));
        }
        prop_assert!(at.max_degree < space.len());

        let below = GValue::new((t.get() - 1e-9).max(0.0)).unwrap();
        prop_assert!(!is_chainable(&space, below).unwrap().chainable);
        prop_assert!(t <= diameter(&space).unwrap());
    }

    #[test]
    fn lipschitz_is_submultiplicative((space, map) in seeded_space_and_map()) {
        let lips = iterated_lipschitz(&space, &map, 6).unwrap();
        let l = |n: usize| lips[n - 1].get();
        for m in 1..=3usize {
            for n in 1..=3usize {
                prop_assert!(
                    l(m + n) <= l(m) * l(n) + 1e-9,
                    "Lip(T^{}) = {} > {} * {}",
                    m + n, l(m + n), l(m), l(n)
                );
            }
        }
    }

    #[test]
    fn minimal_lambda_is_tight((space, map) in seeded_space_and_map()) {
        let eps = diameter(&space).unwrap();
        if let Some(lam) = minimal_uniform_lambda(&space, &map, eps).unwrap() {
            prop_assert!(check_local_contractive(&space, &map, eps, lam).unwrap().holds);
            if lam > 1e-6 {
                let below = lam - 1e-6;
                prop_assert!(
                    !check_local_contractive(&space, &map, eps, below).unwrap().holds,
                    "lambda {} - 1e-6 still passes", lam
                );
            }
        }
    }

    #[test]
    fn lipschitz_matches_oracle_enumeration((space, map) in seeded_space_and_map()) {
        let a = lipschitz_constant(&space, &map).unwrap().get();
        let b = gfix::oracle::lipschitz_by_sorted_ratios(&space, &map).unwrap().get();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn lambda_certificates_replay(values in proptest::collection::vec(0.0f64..1.2, 8..32)) {
        match lambda_scan(&values).unwrap() {
            LambdaOutcome::Certified(cert) => {
                prop_assert!(replay_lambda_certificate(&values, &cert));
            }
            LambdaOutcome::Rejected(rej) => {
                // The recorded violation is a genuine inequality failure.
                match rej.violation {
                    gfix::analysis::LambdaViolation::LinkSum { l, sum, bound } => {
                        let mut expect = 0.0;
                        for i in 1..l {
                            expect += values[i - 1].max(values[i]);
                        }
                        prop_assert!((sum - expect).abs() <= 1e-12);
                        prop_assert!(sum > bound);
                    }
                    gfix::analysis::LambdaViolation::CesaroMean { k, mean } => {
                        let expect = values[..k].iter().sum::<f64>() / k as f64;
                        prop_assert!((mean - expect).abs() <= 1e-12);
                        prop_assert!(mean > rej.at_lambda);
                    }
                }
            }
        }
    }

    #[test]
    fn space_files_round_trip(space in seeded_space()) {
        let file = SpaceFile::from_space(&AnySpace::Finite(space.clone()));
        let json = serde_json::to_string(&file).unwrap();
        let parsed: SpaceFile = serde_json::from_str(&json).unwrap();
        match parsed.build().unwrap() {
            AnySpace::Finite(s) => {
                prop_assert_eq!(s.labels(), space.labels());
                prop_assert_eq!(s.relaxation(), space.relaxation());
                prop_assert_eq!(s.table_entries(), space.table_entries());
            }
            _ => prop_assert!(false, "expected finite space"),
        }
    }

    #[test]
    fn g5_prime_pass_implies_no_length_one_g5_witness(space in seeded_space()) {
        // Every generated space passes (G5'); a chain-length-1 (G5) witness
        // would contradict it, since the two checks coincide there.
        let report = validate_axioms(&space, 1).unwrap();
        prop_assert!(report.verdict("G5'").unwrap().holds);
        prop_assert!(report.verdict("G5").unwrap().holds);
    }
}
