//! Canonical keys by individualization and refinement.
//!
//! The search tree starts from the refined `(g, n, l)` partition; each node
//! individualizes one vertex of the first non-singleton cell and refines
//! again. Every leaf is a vertex order, and the key is the smallest
//! flattened matrix over all leaves. Branching on two vertices that are
//! twins (same triple, same multiplicities to every third vertex) yields the
//! same set of leaves, so only one vertex per twin class is tried.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Entry, StableGraphMatrix};

use super::refine::{individualize, initial_colors, refine, Colors};

/// Default cap on leaves visited per graph.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// Isomorphism-invariant byte string: `K` then the flattened canonical
/// matrix, every number as a 2-byte big-endian integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn encode(k: usize, flat: &[Entry]) -> Self {
        let mut bytes = Vec::with_capacity(2 * (flat.len() + 1));
        bytes.extend_from_slice(&(k as u16).to_be_bytes());
        for &x in flat {
            bytes.extend_from_slice(&x.to_be_bytes());
        }
        CanonicalKey(bytes.into_boxed_slice())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonicalKey(")?;
        for pair in self.0.chunks(2) {
            write!(f, "{:02x}{:02x}", pair[0], pair[1])?;
        }
        f.write_str(")")
    }
}

/// Twin classes: `u ~ v` iff they share `(g, n, l)` and
/// `a[u][w] = a[v][w]` for all `w` other than `u`, `v`.
fn twin_classes(m: &StableGraphMatrix) -> Vec<usize> {
    let k = m.vertices();
    let mut class: Vec<usize> = (0..k).collect();
    for v in 0..k {
        if class[v] != v {
            continue;
        }
        for (u, c) in class.iter_mut().enumerate().skip(v + 1) {
            if *c == u && are_twins(m, u, v) {
                *c = v;
            }
        }
    }
    class
}

fn are_twins(m: &StableGraphMatrix, u: usize, v: usize) -> bool {
    m.genus_at(u) == m.genus_at(v)
        && m.marks_at(u) == m.marks_at(v)
        && m.loops_at(u) == m.loops_at(v)
        && (0..m.vertices()).all(|w| w == u || w == v || m.edges(u, w) == m.edges(v, w))
}

struct Search<'a> {
    m: &'a StableGraphMatrix,
    twins: Vec<usize>,
    best: Option<Vec<Entry>>,
    scratch: Vec<Entry>,
    leaves: u64,
    limit: u64,
}

impl Search<'_> {
    fn visit(&mut self, colors: Colors) -> Result<()> {
        let colors = refine(self.m, colors);
        let k = self.m.vertices();
        // First non-singleton cell, by position.
        let mut size = vec![0usize; k];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let Some(target) = (0..k).find(|&c| size[c] > 1) else {
            return self.leaf(&colors);
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..k {
            if colors[v] as usize != target || tried.contains(&self.twins[v]) {
                continue;
            }
            tried.push(self.twins[v]);
            self.visit(individualize(&colors, v))?;
        }
        Ok(())
    }

    fn leaf(&mut self, colors: &Colors) -> Result<()> {
        self.leaves += 1;
        if self.leaves > self.limit {
            return Err(Error::DedupGuard { limit: self.limit });
        }
        let m = self.m;
        let k = m.vertices();
        let mut perm = vec![0usize; k];
        for (v, &c) in colors.iter().enumerate() {
            perm[c as usize] = v;
        }
        let flat = &mut self.scratch;
        flat.clear();
        flat.extend(perm.iter().map(|&v| m.genus_at(v)));
        flat.extend(perm.iter().map(|&v| m.marks_at(v)));
        flat.extend(perm.iter().map(|&v| m.loops_at(v)));
        for i in 0..k {
            let row = m.row(perm[i]);
            flat.extend(perm[i + 1..].iter().map(|&w| row[w]));
        }
        match &mut self.best {
            Some(best) if *best <= *flat => {}
            Some(best) => best.clone_from(flat),
            None => self.best = Some(flat.clone()),
        }
        Ok(())
    }
}

/// Canonical key of `m`, visiting at most `limit` leaves.
pub fn canonical_key_with_guard(m: &StableGraphMatrix, limit: u64) -> Result<CanonicalKey> {
    let mut search = Search {
        m,
        twins: twin_classes(m),
        best: None,
        scratch: Vec::new(),
        leaves: 0,
        limit,
    };
    search.visit(initial_colors(m))?;
    let best = search.best.expect("search tree has at least one leaf");
    Ok(CanonicalKey::encode(m.vertices(), &best))
}

/// Canonical key of `m` under [`DEFAULT_GUARD`].
pub fn canonical_key(m: &StableGraphMatrix) -> Result<CanonicalKey> {
    canonical_key_with_guard(m, DEFAULT_GUARD)
}

/// Decodes a key back into its canonical matrix.
pub fn canonical_matrix(key: &CanonicalKey) -> StableGraphMatrix {
    let words: Vec<Entry> = key
        .0
        .chunks(2)
        .map(|p| u16::from_be_bytes([p[0], p[1]]))
        .collect();
    let k = words[0] as usize;
    let flat = &words[1..];
    StableGraphMatrix::from_parts(
        &flat[..k],
        &flat[k..2 * k],
        &flat[2 * k..3 * k],
        &flat[3 * k..],
    )
    .expect("keys encode well-formed matrices")
}
