use proptest::prelude::*;
use sgs_core::perm::{mult_by_inverse_transversal, mult_transversal_by_perm};
use sgs_core::{parse_cycles, InverseRep, Perm};

fn perm_of(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

fn triple() -> impl Strategy<Value = (usize, Perm, Perm, Perm)> {
    (1usize..=12).prop_flat_map(|n| (Just(n), perm_of(n), perm_of(n), perm_of(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cycle_notation_round_trips((n, p, _, _) in triple()) {
        let text = p.to_string();
        prop_assert_eq!(parse_cycles(&text, n).unwrap(), p.clone());
        prop_assert_eq!(p.format_cycles(), text);
    }

    #[test]
    fn composition_is_associative((_, a, b, c) in triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_applies_left_first((n, a, b, _) in triple()) {
        let ab = a.compose(&b).unwrap();
        for i in 1..=n {
            prop_assert_eq!(ab.apply(i).unwrap(), b.apply(a.apply(i).unwrap()).unwrap());
        }
    }

    #[test]
    fn identity_and_inverse((n, a, _, _) in triple()) {
        let e = Perm::identity(n);
        prop_assert_eq!(a.compose(&e).unwrap(), a.clone());
        prop_assert_eq!(e.compose(&a).unwrap(), a.clone());
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn powers_add((_, a, _, _) in triple(), r in -30i64..30, s in -30i64..30) {
        prop_assert_eq!(a.power(r).compose(&a.power(s)).unwrap(), a.power(r + s));
        prop_assert!(a.power(a.order() as i64).is_identity());
    }

    #[test]
    fn inverse_rep_products_match_composition((n, p, s, _) in triple()) {
        let rep = InverseRep::from_perm(&s, n).unwrap();
        prop_assert_eq!(rep.to_perm(), s.clone());
        prop_assert_eq!(
            mult_by_inverse_transversal(&p, &rep).unwrap(),
            p.compose(&s.inverse()).unwrap()
        );
        prop_assert_eq!(
            mult_transversal_by_perm(&rep, &p).unwrap(),
            s.compose(&p).unwrap()
        );
    }

    #[test]
    fn trailing_fixed_points_do_not_matter((n, p, _, _) in triple(), extra in 0usize..4) {
        let wide = p.with_degree(n + extra).unwrap();
        prop_assert_eq!(&wide, &p);
        prop_assert_eq!(wide.to_string(), p.to_string());
        prop_assert_eq!(wide.largest_moved_point(), p.largest_moved_point());
    }
}

#[test]
fn compose_rejects_mixed_degrees() {
    let a = Perm::identity(3);
    let b = Perm::identity(4);
    assert!(a.compose(&b).is_err());
}
