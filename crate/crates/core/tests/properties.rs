use opcalc::collections::{circ, unit_collection, Collection};
use opcalc::format::{parse, print, Object};
use opcalc::hopf::{convolution_operad, group_hopf};
use opcalc::linrep::SymRep;
use opcalc::operads::com_operad;
use opcalc::symgrp::Permutation;
use proptest::prelude::*;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

/// Sums of trivial, sign and regular pieces in each arity `1..=max`.
fn collection(max: usize) -> impl Strategy<Value = Collection> {
    proptest::collection::vec(proptest::collection::vec(0..3u8, 0..3), max).prop_map(move |pieces| {
        let mut reps = vec![SymRep::zero(0)];
        for (i, kinds) in pieces.iter().enumerate() {
            let n = i + 1;
            let mut r = SymRep::zero(n);
            for k in kinds {
                let piece = match k {
                    0 => SymRep::trivial(n),
                    1 => SymRep::sign(n),
                    _ => SymRep::regular(n).unwrap(),
                };
                r = r.direct_sum(&piece).unwrap();
            }
            reps.push(r);
        }
        Collection::truncated(reps).unwrap()
    })
}

fn same_characters(a: &Collection, b: &Collection, max: usize) -> bool {
    (0..=max).all(|n| a.rep_or_zero(n).unwrap().characters_on_classes() == b.rep_or_zero(n).unwrap().characters_on_classes())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduced_words_rebuild_the_permutation(g in permutation(6)) {
        let word = g.reduced_word();
        prop_assert_eq!(word.len(), g.inversions());
        let n = g.degree();
        let rebuilt = word.iter().fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::adjacent(n, i)).unwrap());
        prop_assert_eq!(rebuilt, g);
    }

    #[test]
    fn unit_collection_is_a_two_sided_unit(a in collection(4)) {
        let i = unit_collection(4);
        prop_assert!(same_characters(circ(&i, &a, 4).unwrap().collection(), &a, 4));
        prop_assert!(same_characters(circ(&a, &i, 4).unwrap().collection(), &a, 4));
    }

    #[test]
    fn collections_survive_a_manifest_round_trip(a in collection(4)) {
        let text = print(&Object::Collection(a.clone()));
        let back = parse(&text, None).unwrap().into_collection().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(print(&Object::Collection(back)), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn group_algebras_are_hopf_and_convolve_by_powers(orders in proptest::collection::vec(1..=3usize, 1..=2)) {
        let h = group_hopf(&orders).unwrap();
        prop_assert!(h.check().passed());
        let g: usize = orders.iter().product();
        let conv = convolution_operad(&com_operad(2).unwrap(), &h).unwrap();
        prop_assert_eq!(conv.collection().dims(), vec![1, g, g * g]);
    }
}
