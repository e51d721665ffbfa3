//! Inputs shared by the benchmarks.

use stgraph_core::GraphType;

/// Types small enough to time in a benchmark loop, from quick to slow.
pub const TYPES: &[(u32, u32)] = &[(1, 4), (2, 3), (3, 2), (0, 9), (4, 0)];

pub fn graph_type(g: u32, n: u32) -> GraphType {
    GraphType::new(g, n).expect("benchmark types are stable")
}
