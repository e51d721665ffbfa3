//! Color refinement on ordered vertex partitions.
//!
//! A partition is stored as one color per vertex, where the color of a cell
//! is the position of its first vertex once all cells are laid out in
//! order. Refinement only ever splits cells in place, so colors of earlier
//! cells never move.

use crate::graph::{Entry, StableGraphMatrix};

pub(crate) type Colors = Vec<u32>;

/// Cells ordered by the vertex triple `(g, n, l)`.
pub(crate) fn initial_colors(m: &StableGraphMatrix) -> Colors {
    let triples: Vec<(Entry, Entry, Entry)> = m.colors().collect();
    colors_from_keys(triples.len(), |v| triples[v])
}

/// Assigns each vertex the start position of its key group in sorted order.
fn colors_from_keys<K: Ord, F: Fn(usize) -> K>(k: usize, key: F) -> Colors {
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| key(v));
    let mut colors = vec![0u32; k];
    let mut start = 0;
    for pos in 1..=k {
        if pos == k || key(order[pos]) != key(order[start]) {
            for &v in &order[start..pos] {
                colors[v] = start as u32;
            }
            start = pos;
        }
    }
    colors
}

fn cell_count(colors: &Colors) -> usize {
    let mut seen: Vec<u32> = colors.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Splits cells by the multiset of `(neighbor color, multiplicity)` until
/// nothing changes.
pub(crate) fn refine(m: &StableGraphMatrix, mut colors: Colors) -> Colors {
    let k = m.vertices();
    let mut cells = cell_count(&colors);
    while cells < k {
        let signatures: Vec<(u32, Vec<(u32, Entry)>)> = (0..k)
            .map(|v| {
                let mut sig: Vec<(u32, Entry)> = m
                    .row(v)
                    .iter()
                    .enumerate()
                    .filter(|&(w, &mult)| w != v && mult > 0)
                    .map(|(w, &mult)| (colors[w], mult))
                    .collect();
                sig.sort_unstable();
                (colors[v], sig)
            })
            .collect();
        let next = colors_from_keys(k, |v| &signatures[v]);
        let next_cells = cell_count(&next);
        colors = next;
        if next_cells == cells {
            break;
        }
        cells = next_cells;
    }
    colors
}

/// Puts `v` first in its cell.
pub(crate) fn individualize(colors: &Colors, v: usize) -> Colors {
    let c = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(w, &cw)| if cw == c && w != v { c + 1 } else { cw })
        .collect()
}

/// The refined partition as ordered lists of vertices.
pub fn color_classes(m: &StableGraphMatrix) -> Vec<Vec<usize>> {
    let colors = refine(m, initial_colors(m));
    let mut order: Vec<usize> = (0..m.vertices()).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for v in order {
        if last == Some(colors[v]) {
            classes.last_mut().unwrap().push(v);
        } else {
            classes.push(vec![v]);
            last = Some(colors[v]);
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::g3;

    #[test]
    fn distinct_triples_give_singletons() {
        let m =
            StableGraphMatrix::from_parts(&[0, 1, 2], &[1, 0, 0], &[0, 0, 0], &[1, 1, 0]).unwrap();
        assert_eq!(color_classes(&m), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn refinement_splits_the_example() {
        // Vertices 0, 1, 2 share (0, 1, 0) but have 0, 1 and 2 edges to
        // the genus-2 vertex 3.
        assert_eq!(
            color_classes(&g3()),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn automorphic_leaves_stay_together() {
        // Center of genus 1 with two identical genus-0 leaves.
        let m =
            StableGraphMatrix::from_parts(&[0, 0, 1], &[2, 2, 0], &[0, 0, 0], &[0, 1, 1]).unwrap();
        assert_eq!(color_classes(&m), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn individualize_keeps_cell_order() {
        let colors = vec![0, 0, 0, 3];
        assert_eq!(individualize(&colors, 1), vec![1, 0, 1, 3]);
    }
}
