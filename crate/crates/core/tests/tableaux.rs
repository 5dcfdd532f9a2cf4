use std::collections::HashSet;

use invhecke::perm::all_permutations;
use invhecke::rsk::{involution_count_identity, partitions, rsk_insert, standard_tableaux};

#[test]
fn insertion_is_a_bijection_onto_pairs_of_equal_shape() {
    for n in 1..=6 {
        let mut seen = HashSet::new();
        for w in all_permutations(n) {
            let (p, q) = rsk_insert(&w);
            assert_eq!(p.shape(), q.shape());
            assert!(seen.insert((p, q)));
        }
        let pairs: usize = partitions(n)
            .iter()
            .map(|l| standard_tableaux(l).len().pow(2))
            .sum();
        assert_eq!(seen.len(), pairs);
    }
}

#[test]
fn symmetry_and_involutions() {
    for n in 1..=6 {
        for w in all_permutations(n) {
            let (p, q) = rsk_insert(&w);
            let (pi, qi) = rsk_insert(&w.inverse());
            assert_eq!((p.clone(), q.clone()), (qi, pi));
            assert_eq!(p == q, w.is_involution(), "{w}");
        }
    }
}

#[test]
fn count_identity_up_to_rank_eight() {
    for n in 1..=8 {
        let r = involution_count_identity(n);
        assert!(r.equal, "{r:?}");
    }
    assert_eq!(involution_count_identity(6).lhs, 76);
}
