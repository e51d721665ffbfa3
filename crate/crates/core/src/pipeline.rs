//! Generation followed by deduplication.
//!
//! Every emission of a prefix shares the prefix's `(g, n, l)`, and two
//! isomorphic generated matrices always have the same `(g, n, l)`, so each
//! prefix is deduplicated on its own and the stores never grow past one
//! bucket.

use std::time::Instant;

use crate::dedup::{CanonicalKey, IsoClassStore};
use crate::enumerate::{EnumerationReport, Enumerator, GeneratorState, Pruning, VertexReport};
use crate::error::Result;
use crate::graph::{GraphType, StableGraphMatrix};

/// Distinct classes of one prefix.
#[derive(Clone, Debug, Default)]
pub struct PrefixClasses {
    pub emitted: u64,
    /// Canonical keys in increasing order, each with the first emitted
    /// matrix of its class when representatives were requested.
    pub classes: Vec<(CanonicalKey, Option<StableGraphMatrix>)>,
}

impl PrefixClasses {
    pub fn distinct(&self) -> u64 {
        self.classes.len() as u64
    }
}

/// Completes `prefix` and deduplicates its emissions.
pub fn classify_prefix(prefix: &GeneratorState, guard: u64, keep: bool) -> Result<PrefixClasses> {
    let mut store = IsoClassStore::new().with_guard(guard);
    if keep {
        store = store.retaining();
    }
    let mut failure = None;
    let emitted = prefix.complete(&mut |m: &StableGraphMatrix| {
        if failure.is_none() {
            if let Err(e) = store.insert(m) {
                failure = Some(e);
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let classes = store
        .drain_sorted()
        .into_iter()
        .flat_map(|(_, bucket)| bucket.into_sorted())
        .collect();
    Ok(PrefixClasses { emitted, classes })
}

/// Counts for `K` vertices, on the current thread.
pub fn classify_vertices(
    ty: GraphType,
    k: usize,
    pruning: Pruning,
    guard: u64,
) -> Result<VertexReport> {
    let start = Instant::now();
    let mut row = VertexReport {
        vertices: k,
        ..VertexReport::default()
    };
    let mut failure = None;
    Enumerator::new(ty, k)?
        .with_pruning(pruning)
        .for_each_prefix(|p| {
            if failure.is_some() {
                return;
            }
            match classify_prefix(p, guard, false) {
                Ok(c) => {
                    row.emitted += c.emitted;
                    row.distinct += c.distinct();
                }
                Err(e) => failure = Some(e),
            }
        });
    if let Some(e) = failure {
        return Err(e);
    }
    row.duplicates = row.emitted - row.distinct;
    row.seconds = start.elapsed().as_secs_f64();
    Ok(row)
}

/// Counts for every `K`, on the current thread.
pub fn classify(ty: GraphType, pruning: Pruning, guard: u64) -> Result<EnumerationReport> {
    let mut report = EnumerationReport::new(ty);
    for k in 1..=ty.max_vertices() {
        report.rows.push(classify_vertices(ty, k, pruning, guard)?);
    }
    Ok(report)
}

/// One representative per class with `K` vertices, ordered by canonical key.
pub fn distinct_graphs(
    ty: GraphType,
    k: usize,
    pruning: Pruning,
    guard: u64,
) -> Result<Vec<StableGraphMatrix>> {
    let mut all = Vec::new();
    for p in Enumerator::new(ty, k)?.with_pruning(pruning).prefixes() {
        let c = classify_prefix(&p, guard, true)?;
        all.extend(c.classes);
    }
    all.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(all
        .into_iter()
        .map(|(_, m)| m.expect("representatives kept"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedup::DEFAULT_GUARD;

    fn ty(g: u32, n: u32) -> GraphType {
        GraphType::new(g, n).unwrap()
    }

    #[test]
    fn genus_two_has_seven_strata() {
        let report = classify(ty(2, 0), Pruning::Full, DEFAULT_GUARD).unwrap();
        let per_k: Vec<u64> = report.rows.iter().map(|r| r.distinct).collect();
        assert_eq!(per_k, vec![3, 4]);
        assert_eq!(report.distinct(), 7);
    }

    #[test]
    fn representatives_are_distinct_and_generated() {
        let graphs = distinct_graphs(ty(1, 3), 3, Pruning::Full, DEFAULT_GUARD).unwrap();
        let report = classify_vertices(ty(1, 3), 3, Pruning::Full, DEFAULT_GUARD).unwrap();
        assert_eq!(graphs.len() as u64, report.distinct);
        assert!(graphs.iter().all(|m| m.is_generated_form()));
    }
}
