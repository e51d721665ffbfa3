//! Stable graph data model.
//!
//! A stable graph on `K` vertices is stored as the `(K + 3) x K` block
//! `(g, n, l, a)`: vertex genera, marked-point counts, loop counts and the
//! symmetric adjacency matrix. Loop counts live on the diagonal of `a`, so
//! the two can never disagree.

use std::fmt;

use crate::error::{Error, Result};

/// Entry type for every number stored in a matrix.
pub type Entry = u16;

/// The target type `(G, N)`: total genus and number of unordered marked points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphType {
    genus: u32,
    marked: u32,
}

impl GraphType {
    /// Fails unless `2G + N - 2 > 0`.
    pub fn new(genus: u32, marked: u32) -> Result<Self> {
        if 2 * genus as i64 + marked as i64 - 2 <= 0 {
            return Err(Error::UnstableType { genus, marked });
        }
        Ok(GraphType { genus, marked })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn marked(&self) -> u32 {
        self.marked
    }

    /// Largest vertex count a stable graph of this type can have.
    ///
    /// Summing `2 g_v - 2 + h_v >= 1` over the vertices of a stable graph
    /// with at least two vertices gives `K <= 2G - 2 + N`.
    pub fn max_vertices(&self) -> usize {
        (2 * self.genus as usize + self.marked as usize - 2).max(1)
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.genus, self.marked)
    }
}

/// The `(g, n, l, a)` block of one candidate graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StableGraphMatrix {
    k: usize,
    genera: Vec<Entry>,
    marks: Vec<Entry>,
    /// Row-major `K x K`, symmetric, diagonal holds the loop counts.
    adj: Vec<Entry>,
}

impl StableGraphMatrix {
    /// All-zero matrix on `k` vertices.
    pub fn zeros(k: usize) -> Self {
        assert!(k >= 1, "a stable graph has at least one vertex");
        StableGraphMatrix {
            k,
            genera: vec![0; k],
            marks: vec![0; k],
            adj: vec![0; k * k],
        }
    }

    /// Builds a matrix from `g`, `n`, `l` and the strict upper triangle of
    /// `a` given row by row (`a01, a02, .., a0(K-1), a12, ..`).
    pub fn from_parts(
        genera: &[Entry],
        marks: &[Entry],
        loops: &[Entry],
        upper: &[Entry],
    ) -> Result<Self> {
        let k = genera.len();
        if k == 0 {
            return Err(Error::Malformed("no vertices".into()));
        }
        if marks.len() != k || loops.len() != k {
            return Err(Error::Malformed(format!(
                "vectors g, n, l have lengths {}, {}, {}",
                k,
                marks.len(),
                loops.len()
            )));
        }
        if upper.len() != k * (k - 1) / 2 {
            return Err(Error::Malformed(format!(
                "expected {} upper-triangle entries, got {}",
                k * (k - 1) / 2,
                upper.len()
            )));
        }
        let mut m = StableGraphMatrix::zeros(k);
        m.genera.copy_from_slice(genera);
        m.marks.copy_from_slice(marks);
        for (j, &l) in loops.iter().enumerate() {
            m.adj[j * k + j] = l;
        }
        let mut it = upper.iter();
        for i in 0..k {
            for j in i + 1..k {
                m.set_edges(i, j, *it.next().unwrap());
            }
        }
        Ok(m)
    }

    /// Builds a matrix from a full `K x K` adjacency matrix whose diagonal
    /// holds the loop counts. Rejects asymmetric input.
    pub fn from_full(genera: &[Entry], marks: &[Entry], adjacency: &[Vec<Entry>]) -> Result<Self> {
        let k = genera.len();
        if k == 0 || marks.len() != k || adjacency.len() != k {
            return Err(Error::Malformed("inconsistent vertex counts".into()));
        }
        let mut m = StableGraphMatrix::zeros(k);
        m.genera.copy_from_slice(genera);
        m.marks.copy_from_slice(marks);
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Malformed(format!(
                    "adjacency row {i} has length {}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if adjacency[j][i] != x {
                    return Err(Error::Malformed(format!(
                        "adjacency not symmetric at ({i}, {j})"
                    )));
                }
                m.adj[i * k + j] = x;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn vertices(&self) -> usize {
        self.k
    }

    pub fn genera(&self) -> &[Entry] {
        &self.genera
    }

    pub fn marks(&self) -> &[Entry] {
        &self.marks
    }

    pub fn loops(&self) -> Vec<Entry> {
        (0..self.k).map(|j| self.loops_at(j)).collect()
    }

    /// Genus of vertex `j`, zero outside `0..K`.
    #[inline]
    pub fn genus_at(&self, j: usize) -> Entry {
        self.genera.get(j).copied().unwrap_or(0)
    }

    #[inline]
    pub fn marks_at(&self, j: usize) -> Entry {
        self.marks.get(j).copied().unwrap_or(0)
    }

    #[inline]
    pub fn loops_at(&self, j: usize) -> Entry {
        if j < self.k {
            self.adj[j * self.k + j]
        } else {
            0
        }
    }

    /// `a[i][j]`, zero when either index is outside `0..K`.
    #[inline]
    pub fn edges(&self, i: usize, j: usize) -> Entry {
        if i < self.k && j < self.k {
            self.adj[i * self.k + j]
        } else {
            0
        }
    }

    /// Row `i` of the full adjacency matrix.
    #[inline]
    pub fn row(&self, i: usize) -> &[Entry] {
        &self.adj[i * self.k..(i + 1) * self.k]
    }

    #[inline]
    pub fn set_genus(&mut self, j: usize, value: Entry) {
        self.genera[j] = value;
    }

    #[inline]
    pub fn set_marks(&mut self, j: usize, value: Entry) {
        self.marks[j] = value;
    }

    #[inline]
    pub fn set_loops(&mut self, j: usize, value: Entry) {
        self.adj[j * self.k + j] = value;
    }

    /// Sets the multiplicity between `i` and `j` on both sides of the
    /// diagonal. `i == j` sets the loop count.
    #[inline]
    pub fn set_edges(&mut self, i: usize, j: usize, value: Entry) {
        self.adj[i * self.k + j] = value;
        self.adj[j * self.k + i] = value;
    }

    /// `|E|`: loops plus the strict upper triangle.
    pub fn edge_count(&self) -> u64 {
        let mut total = 0u64;
        for i in 0..self.k {
            for j in i..self.k {
                total += self.adj[i * self.k + j] as u64;
            }
        }
        total
    }

    /// `deg v = 2 l_v + sum_{w != v} a[v][w]`.
    pub fn degree(&self, v: usize) -> u64 {
        self.row(v).iter().map(|&x| x as u64).sum::<u64>() + self.loops_at(v) as u64
    }

    /// Number of half edges at `v`: `deg v + n_v`.
    pub fn half_edges(&self, v: usize) -> u64 {
        self.degree(v) + self.marks[v] as u64
    }

    /// `sum g_v + |E| - (K - 1)`.
    pub fn total_genus(&self) -> i64 {
        let g: i64 = self.genera.iter().map(|&x| x as i64).sum();
        g + self.edge_count() as i64 - (self.k as i64 - 1)
    }

    pub fn total_marks(&self) -> u64 {
        self.marks.iter().map(|&x| x as u64).sum()
    }

    /// Connectivity of the underlying simple graph; loops are ignored.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for (w, &mult) in self.row(v).iter().enumerate() {
                if w != v && mult > 0 && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.k
    }

    /// All conditions of a stable graph of type `ty`: connected, correct
    /// total genus and marks, and every genus-0 vertex has at least three
    /// half edges.
    pub fn is_stable(&self, ty: GraphType) -> bool {
        self.total_genus() == ty.genus() as i64
            && self.total_marks() == ty.marked() as u64
            && (0..self.k).all(|v| self.genera[v] > 0 || self.half_edges(v) >= 3)
            && self.is_connected()
    }

    /// The vertex triples `(g_j, n_j, l_j)` in index order.
    pub fn colors(&self) -> impl Iterator<Item = (Entry, Entry, Entry)> + '_ {
        (0..self.k).map(move |j| (self.genera[j], self.marks[j], self.loops_at(j)))
    }

    /// Applies a vertex permutation: the result has `g'_j = g_{perm[j]}`
    /// and `a'[i][j] = a[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> StableGraphMatrix {
        assert_eq!(perm.len(), self.k, "permutation length must equal K");
        let k = self.k;
        let mut out = StableGraphMatrix::zeros(k);
        for (j, &p) in perm.iter().enumerate() {
            out.genera[j] = self.genera[p];
            out.marks[j] = self.marks[p];
        }
        for (i, &pi) in perm.iter().enumerate() {
            let src = pi * k;
            for (j, &pj) in perm.iter().enumerate() {
                out.adj[i * k + j] = self.adj[src + pj];
            }
        }
        out
    }
}

impl fmt::Debug for StableGraphMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "StableGraphMatrix {{ g: {:?}, n: {:?}, l: {:?}, a: [",
            self.genera,
            self.marks,
            self.loops()
        )?;
        for i in 0..self.k {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for j in i + 1..self.k {
                if j > i + 1 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.adj[i * self.k + j])?;
            }
        }
        f.write_str("] }")
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn single(g: Entry, n: Entry, l: Entry) -> StableGraphMatrix {
        StableGraphMatrix::from_parts(&[g], &[n], &[l], &[]).unwrap()
    }

    #[test]
    fn graph_type_requires_negative_euler_characteristic() {
        assert!(GraphType::new(0, 2).is_err());
        assert!(GraphType::new(1, 0).is_err());
        assert!(GraphType::new(0, 3).is_ok());
        assert!(GraphType::new(1, 1).is_ok());
        assert!(GraphType::new(2, 0).is_ok());
    }

    #[test]
    fn max_vertices_small_types() {
        assert_eq!(GraphType::new(0, 3).unwrap().max_vertices(), 1);
        assert_eq!(GraphType::new(1, 1).unwrap().max_vertices(), 1);
        assert_eq!(GraphType::new(2, 0).unwrap().max_vertices(), 2);
        assert_eq!(GraphType::new(0, 18).unwrap().max_vertices(), 16);
    }

    #[test]
    fn total_genus_examples() {
        assert_eq!(single(4, 2, 0).total_genus(), 4);
        assert_eq!(single(0, 0, 3).total_genus(), 3);
        assert_eq!(g0().total_genus(), 5);
    }

    #[test]
    fn connectivity() {
        assert!(single(0, 0, 0).is_connected());
        let split = StableGraphMatrix::from_parts(&[1, 1], &[0, 0], &[0, 0], &[0]).unwrap();
        assert!(!split.is_connected());
        assert!(g0().is_connected());
    }

    #[test]
    fn stability() {
        assert!(single(0, 3, 0).is_stable(GraphType::new(0, 3).unwrap()));
        // (0, 2) is not a valid type, but the vertex itself is unstable too.
        assert!(single(0, 2, 0).half_edges(0) < 3);
        assert!(g0().is_stable(GraphType::new(5, 3).unwrap()));
        assert!(!g0().is_stable(GraphType::new(5, 2).unwrap()));
    }

    #[test]
    fn from_full_rejects_asymmetry() {
        let err = StableGraphMatrix::from_full(&[0, 0], &[2, 2], &[vec![0, 1], vec![2, 0]]);
        assert!(err.is_err());
        let ok = StableGraphMatrix::from_full(&[0, 0], &[2, 2], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(ok.edges(0, 1), 1);
    }

    #[test]
    fn out_of_range_reads_are_zero() {
        let m = g0();
        assert_eq!(m.genus_at(7), 0);
        assert_eq!(m.edges(0, 4), 0);
        assert_eq!(m.loops_at(4), 0);
    }

    #[test]
    fn permuted_matches_transposition_chain() {
        assert_eq!(g0().permuted(&[0, 1, 3, 2]), g1());
        assert_eq!(g1().permuted(&[0, 2, 1, 3]), g2());
    }
}
