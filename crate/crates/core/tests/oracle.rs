mod common;

use std::collections::HashSet;

use common::{all_perms, check_closure, exhaustive_min_product, random_gens};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgs_core::families::{
    sims_example, staircase_family, transposition_products_family, two_generator_family,
    DEFAULT_CLOSURE_CAP,
};
use sgs_core::{
    brute_force_closure, build, check_bounds, minimal_product, theta, BigUint, GeneratorSet, Perm,
    StaircaseKind, Strategy, TransversalSystem,
};

fn build_checked(gens: &GeneratorSet, strategy: Strategy) -> TransversalSystem {
    let (sys, stats) = build(gens, strategy).unwrap();
    sys.check_invariants().unwrap();
    assert_eq!(stats.slots_filled as usize, sys.filled_slots());
    assert!(stats.product_tests >= stats.b_invocations);
    let report = check_bounds(&sys);
    assert!(report.passed(), "{}: {:?}", gens.label(), report.violations);
    sys
}

fn small_matrix() -> Vec<GeneratorSet> {
    let mut out = vec![sims_example(), sims_example().reversed()];
    for n in 2..=6 {
        out.push(staircase_family(n, StaircaseKind::AdjacentTransposition).unwrap());
        out.push(staircase_family(n, StaircaseKind::DescendingCycle).unwrap());
        out.push(two_generator_family(n).unwrap());
        for seed in 0..4 {
            out.push(staircase_family(n, StaircaseKind::Random(seed)).unwrap());
        }
    }
    for n in [2, 4, 6] {
        out.push(transposition_products_family(n).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.random_range(1..=6);
        let count = rng.random_range(1..=3);
        out.push(random_gens(n, count, &mut rng));
    }
    out
}

#[test]
fn order_matches_brute_force() {
    for gens in small_matrix() {
        let closure = brute_force_closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        for strategy in Strategy::ALL {
            let sys = build_checked(&gens, strategy);
            assert_eq!(
                sys.order(),
                BigUint::from(closure.len()),
                "{} {strategy}",
                gens.label()
            );
        }
    }
}

#[test]
fn membership_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sets: Vec<GeneratorSet> = (0..30)
        .map(|i| {
            let n = 4 + i % 4;
            let count = 1 + i % 3;
            random_gens(n, count, &mut rng)
        })
        .collect();
    sets.push(sims_example());
    for gens in sets {
        let closure: HashSet<Perm> = brute_force_closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        let sys = build_checked(&gens, Strategy::Recursive);
        for q in all_perms(gens.degree()) {
            assert_eq!(
                sys.contains(&q),
                closure.contains(&q),
                "{q} in {}",
                gens.label()
            );
        }
    }
}

#[test]
fn closure_under_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sets = small_matrix();
    for n in [10, 16, 24] {
        sets.push(staircase_family(n, StaircaseKind::Random(n as u64)).unwrap());
        sets.push(two_generator_family(n).unwrap());
        sets.push(random_gens(n, 2, &mut rng));
    }
    for gens in sets {
        for strategy in Strategy::ALL {
            let sys = build_checked(&gens, strategy);
            check_closure(&sys, 100, &mut rng).unwrap();
        }
    }
}

#[test]
fn strategies_agree_on_level_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut sets = small_matrix();
    for n in [8, 12, 20] {
        sets.push(random_gens(n, 2, &mut rng));
        sets.push(random_gens(n, 3, &mut rng));
        sets.push(staircase_family(n, StaircaseKind::Random(1)).unwrap());
    }
    for gens in sets {
        let a = build_checked(&gens, Strategy::Recursive);
        let b = build_checked(&gens, Strategy::Iterative);
        assert_eq!(a.order(), b.order());
        let sa: Vec<usize> = a.levels().map(|l| l.s()).collect();
        let sb: Vec<usize> = b.levels().map(|l| l.s()).collect();
        assert_eq!(sa, sb, "{}", gens.label());
    }
}

#[test]
fn minimal_product_matches_exhaustive_search() {
    for n in 1..=6 {
        let best = exhaustive_min_product(n);
        let max = n * (n - 1) / 2;
        for (s, want) in best.iter().enumerate().take(max) {
            assert_eq!(&minimal_product(n, s).unwrap(), want, "P({n},{s})");
        }
        assert!(minimal_product(n, max).is_err());
    }
}

#[test]
fn minimal_product_examples() {
    assert_eq!(minimal_product(5, 0).unwrap(), BigUint::from(1u32));
    assert_eq!(minimal_product(5, 3).unwrap(), BigUint::from(4u32));
    assert_eq!(minimal_product(4, 5).unwrap(), BigUint::from(12u32));
    for n in 3..40 {
        for s in 0..n {
            assert_eq!(minimal_product(n, s).unwrap(), BigUint::from(s + 1));
        }
    }
}

#[test]
fn minimal_product_is_monotone() {
    for n in 2..=30 {
        let values: Vec<BigUint> = (0..n * (n - 1) / 2)
            .map(|s| minimal_product(n, s).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "n={n}");
    }
}

#[test]
fn minimal_product_is_below_actual_products() {
    for gens in small_matrix() {
        let sys = build_checked(&gens, Strategy::Iterative);
        let n = sys.degree();
        let sum = sys.filled_slots();
        if sum < n * (n - 1) / 2 {
            assert!(minimal_product(n, sum).unwrap() <= sys.order());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn theta_is_additive(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
        let ab = BigUint::from(a) * BigUint::from(b);
        let ta = theta(&BigUint::from(a)).unwrap();
        let tb = theta(&BigUint::from(b)).unwrap();
        prop_assert_eq!(theta(&ab).unwrap(), ta + tb);
    }

    #[test]
    fn random_systems_match_closure(seed in any::<u64>(), n in 1usize..=6, count in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_gens(n, count, &mut rng);
        let closure = brute_force_closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        for strategy in Strategy::ALL {
            let (sys, _) = build(&gens, strategy).unwrap();
            prop_assert_eq!(sys.order(), BigUint::from(closure.len()));
            prop_assert!(check_bounds(&sys).passed());
            for g in gens.perms() {
                prop_assert!(sys.contains(g));
            }
        }
    }
}
