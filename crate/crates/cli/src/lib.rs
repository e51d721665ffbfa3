//! Library side of the `stgraph` command: runs the enumeration for one
//! `(G, N)` and writes counts, graphs or per-`K` statistics.
//!
//! Work is split at completed `(g, n, l)` prefixes. Each prefix is one
//! deduplication bucket, so a worker completes and deduplicates a prefix
//! alone and only hands back finished results.

mod format;

use std::io::{self, Write};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use stgraph_core::enumerate::GeneratorState;
use stgraph_core::pipeline::classify_prefix;
use stgraph_core::{
    EnumerationReport, Enumerator, Error, GraphType, Pruning, StableGraphMatrix, VertexReport,
};

pub use format::{decode_json, encode_graph, Format};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Print the number of isomorphism classes.
    #[default]
    Count,
    /// Print one representative per class.
    List,
    /// Print per-vertex-count statistics as CSV.
    Stats,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub graph_type: GraphType,
    /// Restrict to this many vertices.
    pub vertices: Option<usize>,
    pub mode: Mode,
    pub format: Format,
    pub jobs: usize,
    /// With several jobs, write graphs in the same order as a single job.
    pub sorted: bool,
    pub pruning: Pruning,
    pub dedup_guard: u64,
}

impl RunConfig {
    pub fn new(graph_type: GraphType) -> Self {
        RunConfig {
            graph_type,
            vertices: None,
            mode: Mode::Count,
            format: Format::Text,
            jobs: 1,
            sorted: false,
            pruning: Pruning::Full,
            dedup_guard: stgraph_core::dedup::DEFAULT_GUARD,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl RunError {
    /// 3 for a dedup guard trip, 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core(Error::DedupGuard { .. }) => 3,
            RunError::Core(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub report: EnumerationReport,
    /// SHA-256 over the sorted canonical keys of every class found.
    pub key_digest: [u8; 32],
}

impl RunSummary {
    pub fn key_digest_hex(&self) -> String {
        self.key_digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// What a worker hands back for one prefix.
struct PrefixResult {
    index: usize,
    emitted: u64,
    distinct: u64,
    digest: [u8; 32],
    graphs: Vec<StableGraphMatrix>,
}

fn process(
    index: usize,
    prefix: &GeneratorState,
    guard: u64,
    keep: bool,
) -> Result<PrefixResult, Error> {
    let c = classify_prefix(prefix, guard, keep)?;
    let mut hasher = Sha256::new();
    for (key, _) in &c.classes {
        hasher.update(key.as_bytes());
    }
    let distinct = c.distinct();
    Ok(PrefixResult {
        index,
        emitted: c.emitted,
        distinct,
        digest: hasher.finalize().into(),
        graphs: c.classes.into_iter().filter_map(|(_, m)| m).collect(),
    })
}

struct Sink<'w, W: Write> {
    out: &'w mut W,
    format: Format,
    written: u64,
}

impl<W: Write> Sink<'_, W> {
    fn graphs(&mut self, graphs: &[StableGraphMatrix]) -> io::Result<()> {
        for m in graphs {
            if self.format == Format::Text && self.written > 0 {
                writeln!(self.out)?;
            }
            writeln!(self.out, "{}", encode_graph(m, self.format))?;
            self.written += 1;
        }
        Ok(())
    }
}

/// Runs the enumeration described by `config`, writing to `out`.
pub fn run<W: Write>(config: &RunConfig, out: &mut W) -> Result<RunSummary, RunError> {
    let ty = config.graph_type;
    let ks: Vec<usize> = match config.vertices {
        Some(k) => vec![k],
        None => (1..=ty.max_vertices()).collect(),
    };
    let enumerators = ks
        .iter()
        .map(|&k| Enumerator::new(ty, k).map(|e| e.with_pruning(config.pruning)))
        .collect::<Result<Vec<_>, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()?;
    let keep = config.mode == Mode::List;
    let mut sink = Sink {
        out,
        format: config.format,
        written: 0,
    };
    let mut report = EnumerationReport::new(ty);
    let mut digest = Sha256::new();

    if config.mode == Mode::Stats {
        writeln!(sink.out, "G,N,K,emitted,duplicates,distinct,seconds")?;
    }
    for e in &enumerators {
        let start = Instant::now();
        let prefixes = e.prefixes();
        let mut digests = vec![[0u8; 32]; prefixes.len()];
        let mut row = VertexReport {
            vertices: e.vertices(),
            ..VertexReport::default()
        };
        let mut absorb = |r: PrefixResult, sink: &mut Sink<W>| -> Result<(), RunError> {
            row.emitted += r.emitted;
            row.distinct += r.distinct;
            digests[r.index] = r.digest;
            sink.graphs(&r.graphs)?;
            Ok(())
        };
        let guard = config.dedup_guard;
        if config.jobs <= 1 {
            for (i, p) in prefixes.iter().enumerate() {
                absorb(process(i, p, guard, keep)?, &mut sink)?;
            }
        } else if config.sorted || !keep {
            // Bounded batches keep memory flat while preserving order.
            let batch = 64 * config.jobs;
            for (c, chunk) in prefixes.chunks(batch).enumerate() {
                let results: Vec<Result<PrefixResult, Error>> = pool.install(|| {
                    chunk
                        .par_iter()
                        .enumerate()
                        .map(|(i, p)| process(c * batch + i, p, guard, keep))
                        .collect()
                });
                for r in results {
                    absorb(r?, &mut sink)?;
                }
            }
        } else {
            let (tx, rx) = mpsc::channel();
            let mut failure = None;
            std::thread::scope(|scope| {
                let prefixes = &prefixes;
                let pool = &pool;
                scope.spawn(move || {
                    pool.install(|| {
                        prefixes
                            .par_iter()
                            .enumerate()
                            .for_each_with(tx, |tx, (i, p)| {
                                // A closed channel means the writer already failed.
                                let _ = tx.send(process(i, p, guard, keep));
                            })
                    })
                });
                for r in rx {
                    if failure.is_some() {
                        continue;
                    }
                    if let Err(e) = r.map_err(RunError::from).and_then(|r| absorb(r, &mut sink)) {
                        failure = Some(e);
                    }
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
        }
        for d in &digests {
            digest.update(d);
        }
        row.duplicates = row.emitted - row.distinct;
        row.seconds = start.elapsed().as_secs_f64();
        if config.mode == Mode::Stats {
            writeln!(
                sink.out,
                "{},{},{},{},{},{},{:.3}",
                ty.genus(),
                ty.marked(),
                row.vertices,
                row.emitted,
                row.duplicates,
                row.distinct,
                row.seconds
            )?;
        }
        report.rows.push(row);
    }
    if config.mode == Mode::Count {
        writeln!(sink.out, "{}", report.distinct())?;
    }
    sink.out.flush()?;
    Ok(RunSummary {
        report,
        key_digest: digest.finalize().into(),
    })
}
