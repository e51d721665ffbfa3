//! Recursion state and the per-entry ranges.

use std::fmt;

use crate::graph::{Entry, GraphType, StableGraphMatrix};

use super::Pruning;

/// Closed integer interval; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    fn raise(&mut self, lo: i64) {
        self.lo = self.lo.max(lo);
    }

    fn cap(&mut self, hi: i64) {
        self.hi = self.hi.min(hi);
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("[]")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Which entry the recursion is about to assign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Genus(usize),
    Marks(usize),
    Loops(usize),
    Adjacency(usize, usize),
    Complete,
}

/// Partial assignment plus the counters the ranges are computed from.
///
/// Every counter is updated on assignment and restored on backtrack, and
/// always agrees with a recomputation from the assigned entries.
#[derive(Clone)]
pub struct GeneratorState {
    ty: GraphType,
    k: usize,
    pruning: Pruning,
    m: StableGraphMatrix,
    phase: Phase,
    /// `division[j]`: columns `j - 1` and `j` are already strictly ordered.
    division: Vec<bool>,
    /// Vertices assigned genus 0.
    p1: i64,
    /// Unordered vertex pairs joined by at least one edge.
    connected_pairs: i64,
    /// `h_v = n_v + 2 l_v + sum_{w != v} a[v][w]` over assigned entries.
    half: Vec<i64>,
    /// `N⁽²⁾`: sum of `min(2, h_v)` over genus-0 vertices.
    n2_sum: i64,
    /// `sum over genus-0 v of max(0, 3 - h_v)`, maintained while filling `a`.
    deficit: i64,
    g_sum: i64,
    n_sum: i64,
    l_sum: i64,
    a_sum: i64,
}

impl fmt::Debug for GeneratorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorState")
            .field("type", &self.ty)
            .field("phase", &self.phase)
            .field("matrix", &self.m)
            .field("division", &self.division)
            .finish()
    }
}

#[inline]
fn as_entry(v: i64) -> Entry {
    debug_assert!(
        (0..=Entry::MAX as i64).contains(&v),
        "entry {v} out of range"
    );
    v as Entry
}

impl GeneratorState {
    pub(crate) fn new(ty: GraphType, k: usize, pruning: Pruning) -> Self {
        GeneratorState {
            ty,
            k,
            pruning,
            m: StableGraphMatrix::zeros(k),
            phase: Phase::Genus(0),
            division: vec![false; k],
            p1: 0,
            connected_pairs: 0,
            half: vec![0; k],
            n2_sum: 0,
            deficit: 0,
            g_sum: 0,
            n_sum: 0,
            l_sum: 0,
            a_sum: 0,
        }
    }

    /// A finished one-vertex graph wrapped as a completed state.
    pub(crate) fn single_vertex(ty: GraphType, m: StableGraphMatrix) -> Self {
        let mut s = GeneratorState::new(ty, 1, Pruning::Full);
        s.m = m;
        s.phase = Phase::Complete;
        s
    }

    pub fn graph_type(&self) -> GraphType {
        self.ty
    }

    pub fn vertices(&self) -> usize {
        self.k
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn division(&self) -> &[bool] {
        &self.division
    }

    /// The matrix as assigned so far; unassigned entries read as zero.
    pub fn matrix(&self) -> &StableGraphMatrix {
        &self.m
    }

    pub fn p1(&self) -> i64 {
        self.p1
    }

    pub fn connected_pairs(&self) -> i64 {
        self.connected_pairs
    }

    pub fn half_edges(&self, v: usize) -> i64 {
        self.half[v]
    }

    fn g(&self, j: usize) -> i64 {
        self.m.genus_at(j) as i64
    }

    fn n(&self, j: usize) -> i64 {
        self.m.marks_at(j) as i64
    }

    fn l(&self, j: usize) -> i64 {
        self.m.loops_at(j) as i64
    }

    fn a(&self, i: usize, j: usize) -> i64 {
        self.m.edges(i, j) as i64
    }

    fn big_g(&self) -> i64 {
        self.ty.genus() as i64
    }

    fn big_n(&self) -> i64 {
        self.ty.marked() as i64
    }

    fn kk(&self) -> i64 {
        self.k as i64
    }

    fn full(&self) -> bool {
        self.pruning == Pruning::Full
    }

    /// Bounds that rely on every vertex receiving a connecting half edge.
    fn connecting(&self) -> bool {
        self.full() && self.k >= 2
    }

    /// Edges still to be placed in the adjacency matrix once `g` and `l`
    /// are fixed.
    fn remaining_edges(&self) -> i64 {
        self.big_g() - self.g_sum - self.l_sum - self.a_sum + self.kk() - 1
    }

    fn nonloop_degree(&self, v: usize) -> i64 {
        self.half[v] - self.n(v) - 2 * self.l(v)
    }

    fn vertex_deficit(&self, v: usize) -> i64 {
        if self.g(v) == 0 {
            (3 - self.half[v]).max(0)
        } else {
            0
        }
    }

    /// Candidate values for `g_i`.
    pub fn range_genus(&self, i: usize) -> Interval {
        let lo = if i == 0 { 0 } else { self.g(i - 1) };
        let budget = self.big_g() - self.g_sum;
        let mut r = Interval::new(lo, budget);
        if self.connecting() {
            // (K - i) g_i <= G - G_i: at least K - 1 non-loop edges.
            let rest = self.kk() - i as i64;
            r.cap(budget.div_euclid(rest));
            // 2 (K - i) g_i <= 2 (G - G_i) + K - 2 + N - 2 p1: enough free
            // half edges to give each genus-0 vertex two beyond its first.
            let slack = 2 * budget + self.kk() - 2 + self.big_n() - 2 * self.p1;
            r.cap(slack.div_euclid(2 * rest));
        }
        r
    }

    /// Candidate values for `n_i`; `g` is complete.
    pub fn range_marks(&self, i: usize) -> Interval {
        let lo = if self.division[i] || i == 0 {
            0
        } else {
            self.n(i - 1)
        };
        let budget = self.big_n() - self.n_sum;
        let mut r = Interval::new(lo, budget);
        if !self.full() {
            return r;
        }
        if i == self.k - 1 {
            r.raise(budget);
        }
        if self.g(i) == 0 && self.k >= 2 {
            // Genus-0 vertices i..p1 share a division block, so their marks
            // are at least n_i each.
            r.cap(budget.div_euclid(self.p1 - i as i64));
            // Vertices 0..=i need two stabilizing half edges each beyond
            // the connecting one; non-mark half edges cannot cover more
            // than 2 (G - G_K) + K - 2 of them.
            let free = 2 * (self.big_g() - self.g_sum) + self.kk() - 2;
            let need = 2 * (i as i64 + 1) - self.n2_sum - free;
            if need > 2 {
                return Interval::new(1, 0);
            }
            r.raise(need);
        }
        r
    }

    /// Vertex `z < i` of genus 0 with the fewest half edges so far.
    fn least_stabilized_before(&self, i: usize) -> Option<usize> {
        (0..i)
            .filter(|&z| self.g(z) == 0)
            .min_by_key(|&z| (self.n(z) + 2 * self.l(z), z))
    }

    /// Candidate values for `l_i`; `g` and `n` are complete.
    pub fn range_loops(&self, i: usize) -> Interval {
        let lo = if self.division[i] || i == 0 {
            0
        } else {
            self.l(i - 1)
        };
        // G - G_K - L_i: loops may not eat the K - 1 connecting edges.
        let budget = self.big_g() - self.g_sum - self.l_sum;
        let mut r = Interval::new(lo, budget);
        if !self.full() {
            return r;
        }
        let kk = self.kk();
        if self.k >= 2 {
            if let Some(z) = self.least_stabilized_before(i) {
                r.cap(budget + kk - 3 + self.n(z) + 2 * self.l(z));
            }
            // Every genus-0 vertex still short of two stabilizing half edges
            // must get them from the remaining edges.
            let own = if self.g(i) == 0 { self.n(i).min(2) } else { 0 };
            let others = self.n2_sum - own;
            let at_zero = 2 * (budget + kk - 1) - kk - 2 * self.p1 + others + own;
            if at_zero < 0 {
                return Interval::new(1, 0);
            }
            let gained = if self.g(i) == 0 { 2 } else { 0 };
            let hi = (2 * budget + kk - 2 - 2 * self.p1 + others + gained).div_euclid(2);
            r.cap(hi.max(0));
        }
        if self.g(i) == 0 {
            // n_i + 2 l_i plus one half edge per remaining edge reaches 3.
            r.raise(4 - self.n(i) - self.big_g() + self.g_sum + self.l_sum - kk);
        }
        r
    }

    /// Start value for `a[i][j]` imposed by the column order.
    pub fn lower_bound_adjacency(&self, i: usize, j: usize) -> i64 {
        let mut lo = 0;
        if !self.division[i] && i >= 1 {
            lo = lo.max(self.a(i - 1, j));
        }
        if !self.division[j] && j - 1 > i {
            lo = lo.max(self.a(i, j - 1));
        }
        lo
    }

    /// Candidate values for `a[i][j]`, `i < j`; `g`, `n`, `l` complete and
    /// all earlier adjacency entries assigned.
    pub fn range_adjacency(&self, i: usize, j: usize) -> Interval {
        let e = self.remaining_edges();
        let mut r = Interval::new(self.lower_bound_adjacency(i, j), e);
        if !self.full() {
            return r;
        }
        let k = self.k;
        // Enough edges must remain to connect the graph.
        r.cap(e - (k as i64 - 2 - self.connected_pairs).max(0));
        // Remaining half edges must cover every genus-0 deficit.
        let reach = self.vertex_deficit(i) + self.vertex_deficit(j);
        r.cap((2 * e - self.deficit + reach).div_euclid(2));
        if j == k - 1 {
            if self.nonloop_degree(i) == 0 {
                r.raise(1);
            }
            if self.g(i) == 0 {
                r.raise(3 - self.half[i]);
            }
            if i == k - 2 {
                r.raise(e);
            }
        }
        r
    }

    // --- assignment and undo -------------------------------------------

    fn set_genus(&mut self, i: usize, v: i64) -> bool {
        let old = self.division[i];
        if i > 0 && v > self.g(i - 1) {
            self.division[i] = true;
        }
        self.m.set_genus(i, as_entry(v));
        self.g_sum += v;
        if v == 0 {
            // h_i is still 0 here.
            self.p1 += 1;
            self.deficit += 3;
        }
        old
    }

    fn unset_genus(&mut self, i: usize, v: i64, old_div: bool) {
        if v == 0 {
            self.p1 -= 1;
            self.deficit -= 3;
        }
        self.g_sum -= v;
        self.m.set_genus(i, 0);
        self.division[i] = old_div;
    }

    fn set_marks(&mut self, i: usize, v: i64) -> bool {
        let old = self.division[i];
        if i > 0 && v > self.n(i - 1) {
            self.division[i] = true;
        }
        self.m.set_marks(i, as_entry(v));
        self.n_sum += v;
        self.adjust_half(i, v);
        old
    }

    fn unset_marks(&mut self, i: usize, v: i64, old_div: bool) {
        self.adjust_half(i, -v);
        self.n_sum -= v;
        self.m.set_marks(i, 0);
        self.division[i] = old_div;
    }

    fn set_loops(&mut self, i: usize, v: i64) -> bool {
        let old = self.division[i];
        if i > 0 && v > self.l(i - 1) {
            self.division[i] = true;
        }
        self.m.set_loops(i, as_entry(v));
        self.l_sum += v;
        self.adjust_half(i, 2 * v);
        old
    }

    fn unset_loops(&mut self, i: usize, v: i64, old_div: bool) {
        self.adjust_half(i, -2 * v);
        self.l_sum -= v;
        self.m.set_loops(i, 0);
        self.division[i] = old_div;
    }

    fn set_adjacency(&mut self, i: usize, j: usize, v: i64) -> (bool, bool) {
        let old = (self.division[i], self.division[j]);
        if i >= 1 && v > self.a(i - 1, j) {
            self.division[i] = true;
        }
        if j - 1 > i && v > self.a(i, j - 1) {
            self.division[j] = true;
        }
        self.m.set_edges(i, j, as_entry(v));
        self.a_sum += v;
        if v > 0 {
            self.connected_pairs += 1;
        }
        self.adjust_half(i, v);
        self.adjust_half(j, v);
        old
    }

    fn unset_adjacency(&mut self, i: usize, j: usize, v: i64, old_div: (bool, bool)) {
        self.adjust_half(j, -v);
        self.adjust_half(i, -v);
        if v > 0 {
            self.connected_pairs -= 1;
        }
        self.a_sum -= v;
        self.m.set_edges(i, j, 0);
        self.division[i] = old_div.0;
        self.division[j] = old_div.1;
    }

    /// Moves `h_v` and keeps the genus-0 aggregates in step.
    fn adjust_half(&mut self, v: usize, delta: i64) {
        if delta == 0 {
            return;
        }
        let before = self.half[v];
        let after = before + delta;
        self.half[v] = after;
        if self.g(v) == 0 {
            self.n2_sum += after.min(2) - before.min(2);
            self.deficit += (3 - after).max(0) - (3 - before).max(0);
        }
    }

    // --- recursion -------------------------------------------------------

    pub(crate) fn fill_prefixes<F: FnMut(&GeneratorState)>(&mut self, on_prefix: &mut F) {
        self.fill_genus(0, on_prefix);
    }

    fn fill_genus<F: FnMut(&GeneratorState)>(&mut self, i: usize, on_prefix: &mut F) {
        if i == self.k {
            return self.fill_marks(0, on_prefix);
        }
        self.phase = Phase::Genus(i);
        let r = self.range_genus(i);
        for v in r.lo.max(0)..=r.hi {
            let old = self.set_genus(i, v);
            self.fill_genus(i + 1, on_prefix);
            self.unset_genus(i, v, old);
        }
        self.phase = Phase::Genus(i);
    }

    fn fill_marks<F: FnMut(&GeneratorState)>(&mut self, i: usize, on_prefix: &mut F) {
        if i == self.k {
            return self.fill_loops(0, on_prefix);
        }
        self.phase = Phase::Marks(i);
        let r = self.range_marks(i);
        for v in r.lo.max(0)..=r.hi {
            let old = self.set_marks(i, v);
            self.fill_marks(i + 1, on_prefix);
            self.unset_marks(i, v, old);
        }
        self.phase = Phase::Marks(i);
    }

    fn fill_loops<F: FnMut(&GeneratorState)>(&mut self, i: usize, on_prefix: &mut F) {
        if i == self.k {
            self.phase = Phase::Adjacency(0, 1);
            #[cfg(test)]
            self.assert_consistent();
            on_prefix(self);
            return;
        }
        self.phase = Phase::Loops(i);
        let r = self.range_loops(i);
        for v in r.lo.max(0)..=r.hi {
            let old = self.set_loops(i, v);
            self.fill_loops(i + 1, on_prefix);
            self.unset_loops(i, v, old);
        }
        self.phase = Phase::Loops(i);
    }

    /// Fills the adjacency matrix of a completed `(g, n, l)` prefix and
    /// passes every stable result to `sink`. Returns the number emitted.
    pub fn complete<F: FnMut(&StableGraphMatrix)>(&self, sink: &mut F) -> u64 {
        if self.phase == Phase::Complete {
            // One-vertex graphs arrive already validated.
            sink(&self.m);
            return 1;
        }
        assert_eq!(
            self.phase,
            Phase::Adjacency(0, 1),
            "complete() needs a (g, n, l) prefix"
        );
        let mut s = self.clone();
        let mut emitted = 0;
        s.fill_adjacency(0, 1, sink, &mut emitted);
        emitted
    }

    fn fill_adjacency<F: FnMut(&StableGraphMatrix)>(
        &mut self,
        i: usize,
        j: usize,
        sink: &mut F,
        emitted: &mut u64,
    ) {
        if i + 1 >= self.k {
            #[cfg(test)]
            self.assert_consistent();
            if self.m.is_stable(self.ty) {
                *emitted += 1;
                sink(&self.m);
            }
            return;
        }
        self.phase = Phase::Adjacency(i, j);
        let (ni, nj) = if j + 1 < self.k {
            (i, j + 1)
        } else {
            (i + 1, i + 2)
        };
        let r = self.range_adjacency(i, j);
        for v in r.lo.max(0)..=r.hi {
            let old = self.set_adjacency(i, j, v);
            self.fill_adjacency(ni, nj, sink, emitted);
            self.unset_adjacency(i, j, v, old);
        }
        self.phase = Phase::Adjacency(i, j);
    }

    /// `(g, n, l)` of a completed prefix, used as the dedup bucket.
    pub fn bucket_key(&self) -> Vec<Entry> {
        let m = &self.m;
        m.genera()
            .iter()
            .chain(m.marks())
            .copied()
            .chain(m.loops())
            .collect()
    }

    /// Builds a state by assigning the given entries in generation order.
    #[cfg(test)]
    pub(crate) fn assigned(
        ty: GraphType,
        k: usize,
        g: &[i64],
        n: &[i64],
        l: &[i64],
        upper: &[i64],
    ) -> Self {
        let mut s = GeneratorState::new(ty, k, Pruning::Full);
        for (i, &v) in g.iter().enumerate() {
            s.set_genus(i, v);
        }
        for (i, &v) in n.iter().enumerate() {
            s.set_marks(i, v);
        }
        for (i, &v) in l.iter().enumerate() {
            s.set_loops(i, v);
        }
        let cells = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        for ((i, j), &v) in cells.zip(upper) {
            s.set_adjacency(i, j, v);
        }
        s.assert_consistent();
        s
    }

    /// Recomputes every counter from the assigned entries and compares.
    #[cfg(test)]
    pub(crate) fn assert_consistent(&self) {
        let m = &self.m;
        let k = self.k;
        let g_sum: i64 = m.genera().iter().map(|&x| x as i64).sum();
        let n_sum: i64 = m.marks().iter().map(|&x| x as i64).sum();
        let l_sum: i64 = m.loops().iter().map(|&x| x as i64).sum();
        let mut a_sum = 0;
        let mut pairs = 0;
        for i in 0..k {
            for j in i + 1..k {
                a_sum += m.edges(i, j) as i64;
                pairs += (m.edges(i, j) > 0) as i64;
            }
        }
        assert_eq!(self.g_sum, g_sum);
        assert_eq!(self.n_sum, n_sum);
        assert_eq!(self.l_sum, l_sum);
        assert_eq!(self.a_sum, a_sum);
        assert_eq!(self.connected_pairs, pairs);
        let zeros = m.genera().iter().filter(|&&g| g == 0).count() as i64;
        assert_eq!(self.p1, zeros);
        let mut n2 = 0;
        let mut deficit = 0;
        for v in 0..k {
            let h = m.half_edges(v) as i64;
            assert_eq!(self.half[v], h, "half edges of vertex {v}");
            if m.genera()[v] == 0 {
                n2 += h.min(2);
                deficit += (3 - h).max(0);
            }
        }
        assert_eq!(self.n2_sum, n2);
        assert_eq!(self.deficit, deficit);
    }
}
