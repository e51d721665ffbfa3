use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stgraph_core::dedup::{canonical_key, canonical_matrix, color_classes};
use stgraph_core::oracle::{are_isomorphic, brute_force_canonical};
use stgraph_core::{Entry, StableGraphMatrix};

/// Any symmetric matrix with 1 to 6 vertices and small entries.
fn matrix() -> impl Strategy<Value = StableGraphMatrix> {
    (1usize..=6).prop_flat_map(matrix_with)
}

fn matrix_with(k: usize) -> impl Strategy<Value = StableGraphMatrix> {
    let upper = k * (k - 1) / 2;
    (
        prop::collection::vec(0..3 as Entry, k),
        prop::collection::vec(0..3 as Entry, k),
        prop::collection::vec(0..2 as Entry, k),
        prop::collection::vec(0..3 as Entry, upper),
    )
        .prop_map(|(g, n, l, a)| StableGraphMatrix::from_parts(&g, &n, &l, &a).unwrap())
}

/// Two matrices of the same size; half the time the second is a relabeled
/// copy of the first with one adjacency entry possibly bumped.
fn pair() -> impl Strategy<Value = (StableGraphMatrix, StableGraphMatrix)> {
    (2usize..=6)
        .prop_flat_map(|k| {
            (
                matrix_with(k),
                matrix_with(k),
                any::<bool>(),
                any::<u64>(),
                0..k,
                0..k,
                0..2 as Entry,
            )
        })
        .prop_map(|(a, b, related, seed, i, j, bump)| {
            if !related {
                return (a, b);
            }
            let mut b = shuffled(&a, seed);
            if i != j {
                b.set_edges(i, j, b.edges(i, j) + bump);
            }
            (a, b)
        })
}

fn shuffled(m: &StableGraphMatrix, seed: u64) -> StableGraphMatrix {
    let mut perm: Vec<usize> = (0..m.vertices()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    m.permuted(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn transposition_is_an_involution(m in (2usize..=6).prop_flat_map(matrix_with), j in 1usize..6) {
        let j = 1 + (j - 1) % (m.vertices() - 1);
        let back = m.apply_transposition(j).unwrap().apply_transposition(j).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn key_is_invariant_under_relabeling(m in matrix(), seed in any::<u64>()) {
        prop_assert_eq!(canonical_key(&m).unwrap(), canonical_key(&shuffled(&m, seed)).unwrap());
    }

    #[test]
    fn equal_keys_mean_isomorphic((a, b) in pair()) {
        let same = canonical_key(&a).unwrap() == canonical_key(&b).unwrap();
        prop_assert_eq!(same, are_isomorphic(&a, &b));
    }

    #[test]
    fn key_agrees_with_brute_force_canonical_form(a in matrix(), seed in any::<u64>()) {
        let b = shuffled(&a, seed);
        prop_assert_eq!(brute_force_canonical(&a), brute_force_canonical(&b));
        prop_assert!(are_isomorphic(&canonical_matrix(&canonical_key(&a).unwrap()), &a));
    }

    #[test]
    fn reduction_reaches_generated_form(m in matrix()) {
        let r = m.reduce_to_generated_form();
        prop_assert!(r.is_generated_form());
        prop_assert!(r.flatten() <= m.flatten());
        prop_assert!(are_isomorphic(&r, &m));
    }

    #[test]
    fn stability_is_invariant(m in matrix(), seed in any::<u64>()) {
        let ty = stgraph_core::GraphType::new(2, 2).unwrap();
        prop_assert_eq!(m.is_stable(ty), shuffled(&m, seed).is_stable(ty));
        prop_assert_eq!(m.total_genus(), shuffled(&m, seed).total_genus());
    }

    #[test]
    fn refinement_classes_partition_the_vertices(m in matrix()) {
        let mut all: Vec<usize> = color_classes(&m).concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..m.vertices()).collect::<Vec<_>>());
    }
}
