//! Column order, flattening and adjacent transpositions.
//!
//! A matrix is in generated form when every pair of adjacent columns of the
//! big matrix is weakly increasing, comparing `g`, `n`, `l` and then the
//! adjacency rows while skipping the two rows that belong to the pair
//! itself. A breaking position witnesses the opposite, and transposing its
//! column with the previous one strictly lowers the flattened vector.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Entry, StableGraphMatrix};

/// `g`, `n`, `l`, then the rows of the strict upper triangle of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatVector(Vec<Entry>);

impl FlatVector {
    pub fn len_for(k: usize) -> usize {
        3 * k + k * (k - 1) / 2
    }

    pub fn entries(&self) -> &[Entry] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Entry> {
        self.0
    }
}

/// Which row group of the big matrix a breaking entry lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreakKind {
    Genus,
    Marks,
    Loops,
    /// Entry `a[row][column]`; `row` is never `column - 1` or `column`.
    Adjacency {
        row: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BreakingPosition {
    pub kind: BreakKind,
    /// Column `j >= 1`; the pair compared is `(j - 1, j)`.
    pub column: usize,
}

impl StableGraphMatrix {
    /// Entries of the flattened vector, in order, without allocating.
    pub fn flat_entries(&self) -> impl Iterator<Item = Entry> + '_ {
        let k = self.vertices();
        let upper = (0..k).flat_map(move |i| (i + 1..k).map(move |j| self.edges(i, j)));
        self.genera()
            .iter()
            .copied()
            .chain(self.marks().iter().copied())
            .chain((0..k).map(move |j| self.loops_at(j)))
            .chain(upper)
    }

    pub fn flatten(&self) -> FlatVector {
        let mut out = Vec::with_capacity(FlatVector::len_for(self.vertices()));
        out.extend(self.flat_entries());
        FlatVector(out)
    }

    /// Lexicographic comparison of the flattened vectors.
    pub fn flat_cmp(&self, other: &StableGraphMatrix) -> Result<Ordering> {
        if self.vertices() != other.vertices() {
            return Err(Error::VertexMismatch(self.vertices(), other.vertices()));
        }
        Ok(self.flat_entries().cmp(other.flat_entries()))
    }

    /// `self ≺ other`.
    pub fn precedes(&self, other: &StableGraphMatrix) -> Result<bool> {
        Ok(self.flat_cmp(other)? == Ordering::Less)
    }

    /// Swaps vertices `j - 1` and `j` in place.
    pub fn swap_adjacent(&mut self, j: usize) -> Result<()> {
        let k = self.vertices();
        if j == 0 || j >= k {
            return Err(Error::TranspositionIndex { j, k });
        }
        let (p, q) = (j - 1, j);
        let (gp, gq) = (self.genus_at(p), self.genus_at(q));
        self.set_genus(p, gq);
        self.set_genus(q, gp);
        let (np, nq) = (self.marks_at(p), self.marks_at(q));
        self.set_marks(p, nq);
        self.set_marks(q, np);
        let (lp, lq) = (self.loops_at(p), self.loops_at(q));
        self.set_loops(p, lq);
        self.set_loops(q, lp);
        // a[p][q] is fixed by the swap.
        for w in 0..k {
            if w != p && w != q {
                let (x, y) = (self.edges(w, p), self.edges(w, q));
                self.set_edges(w, p, y);
                self.set_edges(w, q, x);
            }
        }
        Ok(())
    }

    /// `σ_{j-1,j} · self`.
    pub fn apply_transposition(&self, j: usize) -> Result<StableGraphMatrix> {
        let mut out = self.clone();
        out.swap_adjacent(j)?;
        Ok(out)
    }

    /// First breaking position, scanning columns left to right and, within a
    /// column pair, `g`, `n`, `l` and then the adjacency rows top to bottom.
    pub fn find_breaking_position(&self) -> Option<BreakingPosition> {
        (1..self.vertices()).find_map(|j| self.column_pair_break(j))
    }

    /// Compares columns `j - 1` and `j` at the first differing row.
    fn column_pair_break(&self, j: usize) -> Option<BreakingPosition> {
        let (p, q) = (j - 1, j);
        let head = [
            (BreakKind::Genus, self.genus_at(p), self.genus_at(q)),
            (BreakKind::Marks, self.marks_at(p), self.marks_at(q)),
            (BreakKind::Loops, self.loops_at(p), self.loops_at(q)),
        ];
        let rows = (0..self.vertices()).filter(|&i| i != p && i != q).map(|i| {
            (
                BreakKind::Adjacency { row: i },
                self.edges(i, p),
                self.edges(i, q),
            )
        });
        for (kind, left, right) in head.into_iter().chain(rows) {
            match left.cmp(&right) {
                Ordering::Less => return None,
                Ordering::Greater => return Some(BreakingPosition { kind, column: j }),
                Ordering::Equal => {}
            }
        }
        None
    }

    /// True iff the matrix has no breaking position.
    pub fn is_generated_form(&self) -> bool {
        self.find_breaking_position().is_none()
    }

    /// Repeatedly transposes the column pair of the first breaking position
    /// until none is left. Every step strictly decreases the flattened
    /// vector, so this terminates; the result is isomorphic to `self`.
    pub fn reduce_to_generated_form(&self) -> StableGraphMatrix {
        let mut m = self.clone();
        while let Some(pos) = m.find_breaking_position() {
            #[cfg(debug_assertions)]
            let before = m.clone();
            m.swap_adjacent(pos.column)
                .expect("breaking column is in range");
            #[cfg(debug_assertions)]
            debug_assert!(m.precedes(&before).unwrap());
        }
        m
    }
}
