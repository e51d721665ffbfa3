//! Recursive generation of stable graphs with ordered columns.
//!
//! The generator fills `g`, then `n`, then `l`, then the strict upper
//! triangle of `a` row by row. Each entry starts from the value forced by
//! the column order (restarting from 0 after a division) and stops at an
//! upper bound derived from the total-genus, connectivity and stability
//! conditions. Completed matrices are validated before being emitted.
//!
//! The recursion can be cut after `(g, n, l)` is complete: distinct prefixes
//! produce disjoint emissions, so they can be completed independently.

mod state;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{Entry, GraphType, StableGraphMatrix};

pub use state::{GeneratorState, Interval, Phase};

/// Which bounds the generator applies on top of the column order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Pruning {
    /// All derived ranges.
    #[default]
    Full,
    /// Only nonnegativity and the genus, marks and edge budgets.
    Trivial,
}

/// Every one-vertex stable graph of type `ty`: genus `h` with `G - h` loops
/// and all `N` marks, for `h = 0..=G`.
pub fn one_vertex_graphs(ty: GraphType) -> Vec<StableGraphMatrix> {
    let big_g = ty.genus() as Entry;
    (0..=big_g)
        .map(|h| {
            let mut m = StableGraphMatrix::zeros(1);
            m.set_genus(0, h);
            m.set_marks(0, ty.marked() as Entry);
            m.set_loops(0, big_g - h);
            m
        })
        .filter(|m| m.is_stable(ty))
        .collect()
}

/// Generator for one `(G, N, K)`.
#[derive(Clone, Debug)]
pub struct Enumerator {
    ty: GraphType,
    k: usize,
    pruning: Pruning,
}

impl Enumerator {
    pub fn new(ty: GraphType, k: usize) -> Result<Self> {
        let max = ty.max_vertices();
        if k == 0 || k > max {
            return Err(Error::VertexCount { k, max });
        }
        let widest = ty.genus() as u64 + k as u64 + ty.marked() as u64;
        if widest > Entry::MAX as u64 {
            return Err(Error::Malformed(format!(
                "type {ty} too large for 16-bit entries"
            )));
        }
        Ok(Enumerator {
            ty,
            k,
            pruning: Pruning::Full,
        })
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn graph_type(&self) -> GraphType {
        self.ty
    }

    pub fn vertices(&self) -> usize {
        self.k
    }

    /// Calls `f` on every completed `(g, n, l)` prefix, in generation order.
    /// For `K = 1` each prefix is a finished one-vertex graph.
    pub fn for_each_prefix<F: FnMut(&GeneratorState)>(&self, mut f: F) {
        if self.k == 1 {
            for m in one_vertex_graphs(self.ty) {
                f(&GeneratorState::single_vertex(self.ty, m));
            }
            return;
        }
        let mut s = GeneratorState::new(self.ty, self.k, self.pruning);
        s.fill_prefixes(&mut f);
    }

    pub fn prefixes(&self) -> Vec<GeneratorState> {
        let mut out = Vec::new();
        self.for_each_prefix(|p| out.push(p.clone()));
        out
    }

    /// Runs the whole recursion, passing every emitted matrix to `sink`.
    /// Returns the number emitted.
    pub fn run<F: FnMut(&StableGraphMatrix)>(&self, mut sink: F) -> u64 {
        let mut emitted = 0;
        self.for_each_prefix(|p| emitted += p.complete(&mut sink));
        emitted
    }
}

/// Counts for one vertex count.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VertexReport {
    pub vertices: usize,
    /// Matrices that passed final validation.
    pub emitted: u64,
    /// Emitted matrices isomorphic to an earlier emission.
    pub duplicates: u64,
    pub distinct: u64,
    pub seconds: f64,
}

/// Per-`K` counts for one type.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationReport {
    pub graph_type: GraphType,
    pub rows: Vec<VertexReport>,
}

impl EnumerationReport {
    pub fn new(graph_type: GraphType) -> Self {
        EnumerationReport {
            graph_type,
            rows: Vec::new(),
        }
    }

    pub fn emitted(&self) -> u64 {
        self.rows.iter().map(|r| r.emitted).sum()
    }

    pub fn duplicates(&self) -> u64 {
        self.rows.iter().map(|r| r.duplicates).sum()
    }

    pub fn distinct(&self) -> u64 {
        self.rows.iter().map(|r| r.distinct).sum()
    }

    /// Fraction of emitted matrices rejected as duplicates.
    pub fn duplicate_ratio(&self) -> f64 {
        match self.emitted() {
            0 => 0.0,
            e => self.duplicates() as f64 / e as f64,
        }
    }
}

/// Emits every generated stable graph with `K` vertices. The report's
/// `distinct` equals `emitted`; deduplication happens downstream.
pub fn enumerate<F: FnMut(&StableGraphMatrix)>(
    ty: GraphType,
    k: usize,
    pruning: Pruning,
    sink: F,
) -> Result<VertexReport> {
    let start = Instant::now();
    let emitted = Enumerator::new(ty, k)?.with_pruning(pruning).run(sink);
    Ok(VertexReport {
        vertices: k,
        emitted,
        duplicates: 0,
        distinct: emitted,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// [`enumerate`] for `K = 1..=max_vertices`.
pub fn enumerate_all<F: FnMut(&StableGraphMatrix)>(
    ty: GraphType,
    pruning: Pruning,
    mut sink: F,
) -> EnumerationReport {
    let mut report = EnumerationReport::new(ty);
    for k in 1..=ty.max_vertices() {
        let row = enumerate(ty, k, pruning, &mut sink).expect("k is within 1..=max_vertices");
        report.rows.push(row);
    }
    report
}
