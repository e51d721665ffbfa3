use std::collections::HashMap;

use crate::error::Result;
use crate::graph::{Entry, StableGraphMatrix};

use super::canon::{canonical_key_with_guard, CanonicalKey, DEFAULT_GUARD};

/// Bucket holding matrices whose `(g, n, l)` triples are not sorted, which
/// never happens for generated matrices.
const UNSORTED: &[Entry] = &[];

/// Distinct classes seen in one `(g, n, l)` bucket.
#[derive(Clone, Debug, Default)]
pub struct Bucket {
    classes: HashMap<CanonicalKey, Option<StableGraphMatrix>>,
    inserted: u64,
}

impl Bucket {
    pub fn distinct(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    pub fn duplicates(&self) -> u64 {
        self.inserted - self.distinct()
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.classes.contains_key(key)
    }

    /// Classes ordered by key, each with its first representative if the
    /// store retains them.
    pub fn into_sorted(self) -> Vec<(CanonicalKey, Option<StableGraphMatrix>)> {
        let mut out: Vec<_> = self.classes.into_iter().collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Canonical keys grouped by the exact `(g, n, l)` vectors.
///
/// Generated matrices list their vertex triples in sorted order, and
/// isomorphic graphs have the same multiset of triples, so isomorphic
/// generated matrices always land in the same bucket and matrices in
/// different buckets are never compared.
#[derive(Clone, Debug)]
pub struct IsoClassStore {
    buckets: HashMap<Vec<Entry>, Bucket>,
    guard: u64,
    retain: bool,
}

impl Default for IsoClassStore {
    fn default() -> Self {
        IsoClassStore::new()
    }
}

impl IsoClassStore {
    pub fn new() -> Self {
        IsoClassStore {
            buckets: HashMap::new(),
            guard: DEFAULT_GUARD,
            retain: false,
        }
    }

    /// Canonical search budget per graph.
    pub fn with_guard(mut self, guard: u64) -> Self {
        self.guard = guard;
        self
    }

    /// Keep the first matrix inserted for each class.
    pub fn retaining(mut self) -> Self {
        self.retain = true;
        self
    }

    pub fn bucket_key(m: &StableGraphMatrix) -> Vec<Entry> {
        let triples: Vec<_> = m.colors().collect();
        if triples.windows(2).any(|w| w[0] > w[1]) {
            return UNSORTED.to_vec();
        }
        let mut key = m.genera().to_vec();
        key.extend_from_slice(m.marks());
        key.extend(m.loops());
        key
    }

    /// Returns `true` if `m` starts a new class.
    pub fn insert(&mut self, m: &StableGraphMatrix) -> Result<bool> {
        let key = canonical_key_with_guard(m, self.guard)?;
        let retain = self.retain;
        let bucket = self.buckets.entry(Self::bucket_key(m)).or_default();
        bucket.inserted += 1;
        if bucket.classes.contains_key(&key) {
            return Ok(false);
        }
        bucket.classes.insert(key, retain.then(|| m.clone()));
        Ok(true)
    }

    pub fn bucket(&self, key: &[Entry]) -> Option<&Bucket> {
        self.buckets.get(key)
    }

    pub fn buckets(&self) -> impl Iterator<Item = (&Vec<Entry>, &Bucket)> {
        self.buckets.iter()
    }

    /// Removes and returns every bucket, ordered by bucket key.
    pub fn drain_sorted(&mut self) -> Vec<(Vec<Entry>, Bucket)> {
        let mut out: Vec<_> = self.buckets.drain().collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn distinct(&self) -> u64 {
        self.buckets.values().map(Bucket::distinct).sum()
    }

    pub fn inserted(&self) -> u64 {
        self.buckets.values().map(Bucket::inserted).sum()
    }

    pub fn duplicates(&self) -> u64 {
        self.inserted() - self.distinct()
    }

    /// Moves the buckets of `other` into `self`. Buckets present on both
    /// sides are merged class by class.
    pub fn merge(&mut self, other: IsoClassStore) {
        for (key, theirs) in other.buckets {
            let ours = self.buckets.entry(key).or_default();
            ours.inserted += theirs.inserted;
            for (class, rep) in theirs.classes {
                ours.classes.entry(class).or_insert(rep);
            }
        }
    }
}
