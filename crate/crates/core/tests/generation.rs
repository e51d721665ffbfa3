use std::collections::HashSet;
use std::ops::ControlFlow;

use stgraph_core::oracle::brute_force_classes;
use stgraph_core::{
    enumerate_all, one_vertex_graphs, Entry, FlatVector, GraphType, Pruning, StableGraphMatrix,
};

const SMALL: &[(u32, u32)] = &[
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 0),
    (2, 1),
    (2, 2),
    (3, 0),
    (3, 1),
];

fn emitted(ty: GraphType, pruning: Pruning) -> Vec<StableGraphMatrix> {
    let mut out = Vec::new();
    enumerate_all(ty, pruning, |m| out.push(m.clone()));
    out
}

/// Every permutation of `0..k`.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn emissions_are_stable_and_in_generated_form() {
    for &(g, n) in SMALL {
        let ty = GraphType::new(g, n).unwrap();
        for m in emitted(ty, Pruning::Full) {
            assert!(m.is_stable(ty), "{ty}: {m:?}");
            assert_eq!(m.find_breaking_position(), None, "{ty}: {m:?}");
        }
    }
}

#[test]
fn every_relabeling_reduces_to_an_emission() {
    for &(g, n) in SMALL {
        let ty = GraphType::new(g, n).unwrap();
        let seen: HashSet<StableGraphMatrix> = emitted(ty, Pruning::Full).into_iter().collect();
        for class in brute_force_classes(ty).unwrap().iter() {
            for perm in permutations(class.vertices()) {
                let reduced = class.permuted(&perm).reduce_to_generated_form();
                assert!(seen.contains(&reduced), "{ty}: {reduced:?} not emitted");
            }
        }
    }
}

#[test]
fn pruning_does_not_change_the_emissions() {
    for &(g, n) in SMALL {
        let ty = GraphType::new(g, n).unwrap();
        let mut full = emitted(ty, Pruning::Full);
        let mut trivial = emitted(ty, Pruning::Trivial);
        full.sort_by_key(|m| m.flatten());
        trivial.sort_by_key(|m| m.flatten());
        assert_eq!(full, trivial, "{ty}");
    }
}

#[test]
fn one_vertex_count() {
    for g in 0..=10 {
        for n in 0..=6 {
            if let Ok(ty) = GraphType::new(g, n) {
                assert_eq!(one_vertex_graphs(ty).len(), g as usize + 1, "{ty}");
            }
        }
    }
}

/// Calls `f` on every symmetric `k`-vertex matrix with entries in `0..=max`.
fn for_each_matrix(k: usize, max: Entry, mut f: impl FnMut(&StableGraphMatrix)) {
    let mut m = StableGraphMatrix::zeros(k);
    let mut slots: Vec<(u8, usize, usize)> = Vec::new();
    for kind in 0..3 {
        slots.extend((0..k).map(|v| (kind, v, v)));
    }
    for i in 0..k {
        slots.extend((i + 1..k).map(|j| (3, i, j)));
    }
    let set = |m: &mut StableGraphMatrix, (kind, i, j): (u8, usize, usize), v: Entry| match kind {
        0 => m.set_genus(i, v),
        1 => m.set_marks(i, v),
        2 => m.set_loops(i, v),
        _ => m.set_edges(i, j, v),
    };
    let mut digits = vec![0 as Entry; slots.len()];
    loop {
        f(&m);
        let step = digits.iter_mut().enumerate().try_for_each(|(at, d)| {
            if *d < max {
                *d += 1;
                ControlFlow::Break((at, *d))
            } else {
                *d = 0;
                ControlFlow::Continue(())
            }
        });
        let ControlFlow::Break((at, value)) = step else {
            return;
        };
        for (s, &d) in slots.iter().zip(&digits).take(at) {
            set(&mut m, *s, d);
        }
        set(&mut m, slots[at], value);
    }
}

#[test]
fn generated_form_is_minimality_up_to_three_vertices() {
    for k in 1..=3 {
        let mut count = 0u64;
        for_each_matrix(k, 2, |m| {
            count += 1;
            let mut t = m.clone();
            let minimal = (1..k).all(|j| {
                t.swap_adjacent(j).unwrap();
                let lower = t.precedes(m).unwrap();
                t.swap_adjacent(j).unwrap();
                !lower
            });
            assert_eq!(m.is_generated_form(), minimal, "{m:?}");
        });
        assert_eq!(count, 3u64.pow(FlatVector::len_for(k) as u32));
    }
}
