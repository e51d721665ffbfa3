//! Brute-force reference enumeration.
//!
//! Every matrix of the right type is listed directly, with no ordering
//! constraints: the genus equation fixes `Σg + Σl + Σ_{i<j} a_ij = G + K - 1`,
//! so the candidates are the compositions of that budget over all slots,
//! combined with the compositions of `N` over the vertices. Stable candidates
//! are grouped by the lexicographically smallest flattening over all `K!`
//! relabelings. Nothing here depends on the generator or the canonical key
//! search.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Entry, GraphType, StableGraphMatrix};

/// Largest vertex count the oracle will handle.
pub const MAX_ORACLE_VERTICES: usize = 7;

/// Isomorphism classes of one type, as brute-force canonical forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleClasses {
    pub graph_type: GraphType,
    /// `by_vertices[k - 1]` holds the classes with `k` vertices, sorted.
    pub by_vertices: Vec<Vec<StableGraphMatrix>>,
}

impl OracleClasses {
    pub fn count(&self) -> usize {
        self.by_vertices.iter().map(Vec::len).sum()
    }

    pub fn count_with(&self, k: usize) -> usize {
        self.by_vertices.get(k.wrapping_sub(1)).map_or(0, Vec::len)
    }

    pub fn iter(&self) -> impl Iterator<Item = &StableGraphMatrix> {
        self.by_vertices.iter().flatten()
    }
}

/// All isomorphism classes of stable graphs of type `ty`.
pub fn brute_force_classes(ty: GraphType) -> Result<OracleClasses> {
    let max = ty.max_vertices();
    if max > MAX_ORACLE_VERTICES {
        return Err(Error::OracleGuard {
            genus: ty.genus(),
            marked: ty.marked(),
            needed: max,
            max: MAX_ORACLE_VERTICES,
        });
    }
    let by_vertices = (1..=max)
        .map(|k| brute_force_classes_with(ty, k))
        .collect::<Result<_>>()?;
    Ok(OracleClasses {
        graph_type: ty,
        by_vertices,
    })
}

/// Classes with exactly `k` vertices.
pub fn brute_force_classes_with(ty: GraphType, k: usize) -> Result<Vec<StableGraphMatrix>> {
    if k > MAX_ORACLE_VERTICES {
        return Err(Error::OracleGuard {
            genus: ty.genus(),
            marked: ty.marked(),
            needed: k,
            max: MAX_ORACLE_VERTICES,
        });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let budget = ty.genus() as usize + k - 1;
    let upper = k * (k - 1) / 2;
    let perms = permutations(k);
    let mut seen: BTreeSet<Vec<Entry>> = BTreeSet::new();
    let mut marks = vec![0 as Entry; k];
    let mut slots = vec![0 as Entry; 2 * k + upper];
    for_each_composition(&mut marks, ty.marked() as usize, &mut |n| {
        for_each_composition(&mut slots, budget, &mut |s| {
            let (g, rest) = s.split_at(k);
            let (l, a) = rest.split_at(k);
            let m = StableGraphMatrix::from_parts(g, n, l, a).expect("slot counts match k");
            if m.is_stable(ty) {
                seen.insert(min_flattening(&m, &perms));
            }
        });
    });
    Ok(seen.into_iter().map(|flat| from_flat(k, &flat)).collect())
}

/// Smallest flattening of `m` over all relabelings.
pub fn brute_force_canonical(m: &StableGraphMatrix) -> StableGraphMatrix {
    let k = m.vertices();
    from_flat(k, &min_flattening(m, &permutations(k)))
}

/// Whether some relabeling of `a` equals `b`.
pub fn are_isomorphic(a: &StableGraphMatrix, b: &StableGraphMatrix) -> bool {
    let k = a.vertices();
    if k != b.vertices() {
        return false;
    }
    let target = flat_under(b, &(0..k).collect::<Vec<_>>());
    permutations(k).iter().any(|p| flat_under(a, p) == target)
}

fn from_flat(k: usize, flat: &[Entry]) -> StableGraphMatrix {
    StableGraphMatrix::from_parts(
        &flat[..k],
        &flat[k..2 * k],
        &flat[2 * k..3 * k],
        &flat[3 * k..],
    )
    .expect("flattening has the right length")
}

/// Flattening of the matrix whose vertex `i` is vertex `perm[i]` of `m`.
fn flat_under(m: &StableGraphMatrix, perm: &[usize]) -> Vec<Entry> {
    let k = perm.len();
    let mut flat = Vec::with_capacity(3 * k + k * (k - 1) / 2);
    flat.extend(perm.iter().map(|&v| m.genus_at(v)));
    flat.extend(perm.iter().map(|&v| m.marks_at(v)));
    flat.extend(perm.iter().map(|&v| m.loops_at(v)));
    for i in 0..k {
        for j in i + 1..k {
            flat.push(m.edges(perm[i], perm[j]));
        }
    }
    flat
}

fn min_flattening(m: &StableGraphMatrix, perms: &[Vec<usize>]) -> Vec<Entry> {
    perms
        .iter()
        .map(|p| flat_under(m, p))
        .min()
        .expect("at least the identity")
}

/// All permutations of `0..k`, by Heap's algorithm.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                cur.swap(0, i);
            } else {
                cur.swap(c[i], i);
            }
            out.push(cur.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Calls `f` with every way of writing `total` as an ordered sum of
/// `slots.len()` nonnegative parts.
fn for_each_composition<F: FnMut(&[Entry])>(slots: &mut [Entry], total: usize, f: &mut F) {
    fn go<F: FnMut(&[Entry])>(slots: &mut [Entry], at: usize, left: usize, f: &mut F) {
        if at + 1 == slots.len() {
            slots[at] = left as Entry;
            f(slots);
            return;
        }
        for v in 0..=left {
            slots[at] = v as Entry;
            go(slots, at + 1, left - v, f);
        }
    }
    if slots.is_empty() {
        if total == 0 {
            f(slots);
        }
        return;
    }
    go(slots, 0, total, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn ty(g: u32, n: u32) -> GraphType {
        GraphType::new(g, n).unwrap()
    }

    #[test]
    fn heap_lists_each_permutation_once() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        assert_eq!(perms.iter().collect::<BTreeSet<_>>().len(), 24);
    }

    #[test]
    fn composition_counts() {
        let mut count = 0;
        for_each_composition(&mut [0; 3], 4, &mut |_| count += 1);
        assert_eq!(count, 15);
    }

    #[test]
    fn small_known_counts() {
        // Four unlabeled marks: one vertex, or two vertices with two marks each.
        assert_eq!(brute_force_classes(ty(0, 4)).unwrap().count(), 2);
        // Genus 1, one mark: a genus-1 vertex, or a genus-0 vertex with a loop.
        assert_eq!(brute_force_classes(ty(1, 1)).unwrap().count(), 2);
        // Genus 2, no marks: three one-vertex and four two-vertex graphs.
        assert_eq!(brute_force_classes(ty(2, 0)).unwrap().count(), 7);
    }

    #[test]
    fn isomorphism_of_chain_endpoints() {
        assert!(are_isomorphic(&g0(), &g3()));
        assert!(are_isomorphic(&g1(), &g2()));
        let other = StableGraphMatrix::from_parts(
            &[0, 0, 0, 2],
            &[1, 1, 1, 0],
            &[0, 0, 0, 0],
            &[1, 1, 1, 0, 1, 2],
        )
        .unwrap();
        assert!(!are_isomorphic(&g3(), &other));
    }

    #[test]
    fn canonical_form_is_shared() {
        assert_eq!(brute_force_canonical(&g0()), brute_force_canonical(&g3()));
    }

    #[test]
    fn guard() {
        assert!(matches!(
            brute_force_classes(ty(5, 0)),
            Err(Error::OracleGuard { needed: 8, .. })
        ));
        assert!(matches!(
            brute_force_classes(ty(2, 8)),
            Err(Error::OracleGuard { needed: 10, .. })
        ));
    }
}
