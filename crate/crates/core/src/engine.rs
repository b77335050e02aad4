//! PageRank engines over a pair of graph snapshots.
//!
//! Every engine evaluates the same per-vertex update
//!
//! ```text
//! R[v] = (1 - α) / n + α · Σ_{u ∈ in(v)} R[u] / |out(u)|
//! ```
//!
//! and differs only in which vertices it recomputes and how it seeds the rank
//! vector. Graphs must be normalized (every vertex has a self-loop), so no
//! out-degree is zero.
//!
//! Ranks live in a slice of `AtomicU64` holding `f64` bits. In asynchronous
//! mode one such slice is read and written concurrently; relaxed loads and
//! stores keep each value untorn while letting a vertex observe neighbours
//! from either the current or the previous sweep. Synchronous mode reads one
//! slice and writes another, then swaps them.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::graph::{BatchUpdate, GraphSnapshot};
use crate::sched::for_each_chunk;
use crate::{Error, Result, VertexId};

/// Default frontier tolerance is the iteration tolerance divided by this.
pub const FRONTIER_TOLERANCE_DIVISOR: f64 = 1e5;

/// Rank storage discipline.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum Mode {
    /// Separate input and output vectors, swapped after each iteration.
    #[serde(rename = "sync")]
    Synchronous,
    /// A single vector updated in place.
    #[default]
    #[serde(rename = "async")]
    Asynchronous,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Synchronous, Mode::Asynchronous];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Synchronous => "sync",
            Mode::Asynchronous => "async",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sync" | "synchronous" => Ok(Mode::Synchronous),
            "async" | "asynchronous" => Ok(Mode::Asynchronous),
            _ => Err(Error::Config(format!(
                "unknown mode {s:?} (expected sync or async)"
            ))),
        }
    }
}

/// Update strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    /// Full recomputation from the uniform vector.
    Static,
    /// Full recomputation seeded with the previous ranks.
    Naive,
    /// Recomputes vertices reachable from the updated edges' sources.
    Traversal,
    /// Recomputes an incrementally expanding frontier.
    Frontier,
}

impl Approach {
    pub const ALL: [Approach; 4] = [
        Approach::Static,
        Approach::Naive,
        Approach::Traversal,
        Approach::Frontier,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Approach::Static => "static",
            Approach::Naive => "naive",
            Approach::Traversal => "traversal",
            Approach::Frontier => "frontier",
        }
    }

    pub fn is_dynamic(self) -> bool {
        self != Approach::Static
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Approach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "static" => Ok(Approach::Static),
            "naive" | "naive-dynamic" => Ok(Approach::Naive),
            "traversal" | "dynamic-traversal" => Ok(Approach::Traversal),
            "frontier" | "dynamic-frontier" => Ok(Approach::Frontier),
            _ => Err(Error::Config(format!(
                "unknown approach {s:?} (expected static, naive, traversal or frontier)"
            ))),
        }
    }
}

/// Parameters shared by all engines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Damping factor, in `(0, 1)`.
    pub alpha: f64,
    /// Convergence threshold on the L∞ change of one iteration.
    pub tau: f64,
    /// Per-vertex change above which a vertex's out-neighbours join the
    /// frontier. `None` means `tau / 1e5`.
    pub tau_f: Option<f64>,
    pub max_iterations: usize,
    pub mode: Mode,
    /// Vertices claimed per scheduling step.
    pub chunk_size: usize,
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            alpha: 0.85,
            tau: 1e-10,
            tau_f: None,
            max_iterations: 500,
            mode: Mode::Asynchronous,
            chunk_size: 2048,
            threads: default_threads(),
        }
    }
}

/// Number of hardware threads, or 1 if unknown.
pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl EngineConfig {
    pub fn frontier_tolerance(&self) -> f64 {
        self.tau_f.unwrap_or(self.tau / FRONTIER_TOLERANCE_DIVISOR)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if self.tau.is_nan() || self.tau <= 0.0 {
            return bad(format!("tau must be positive, got {}", self.tau));
        }
        let tau_f = self.frontier_tolerance();
        if !(tau_f > 0.0 && tau_f <= self.tau) {
            return bad(format!("tau_f must lie in (0, tau], got {tau_f}"));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        if self.chunk_size == 0 {
            return bad("chunk_size must be at least 1".into());
        }
        if self.threads == 0 {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }
}

/// Per-vertex rank values.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankVector(Vec<f64>);

impl RankVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    /// Every vertex at `1 / n`.
    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::ops::Deref for RankVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for RankVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// One byte per vertex: 0 untouched, 1 affected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffectedFlags(Vec<u8>);

impl AffectedFlags {
    pub fn new(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_affected(&self, v: VertexId) -> bool {
        self.0[v as usize] != 0
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&f| f != 0).count()
    }

    pub fn affected(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &f)| f != 0)
            .map(|(v, _)| v as VertexId)
    }

    pub fn is_subset_of(&self, other: &AffectedFlags) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b != 0)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn from_atomic(flags: &[AtomicU8]) -> Self {
        Self(
            flags
                .iter()
                .map(|f| u8::from(f.load(Ordering::Relaxed) != 0))
                .collect(),
        )
    }
}

/// Outcome of one engine run.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub ranks: RankVector,
    pub iterations: usize,
    /// Number of single-vertex rank evaluations performed.
    pub rank_updates: u64,
    pub affected_final: usize,
    /// Seconds spent marking and iterating; buffer setup is excluded.
    pub elapsed: f64,
    pub converged: bool,
    /// Final affected set of the traversal and frontier engines.
    pub flags: Option<AffectedFlags>,
}

/// Rank of `v` after one update against `ranks`.
pub fn rank_of(v: VertexId, g: &GraphSnapshot, ranks: &[f64], alpha: f64) -> f64 {
    update(g, v, alpha, (1.0 - alpha) / g.n() as f64, |u| {
        ranks[u as usize]
    })
}

#[inline(always)]
fn update(
    g: &GraphSnapshot,
    v: VertexId,
    alpha: f64,
    teleport: f64,
    rank: impl Fn(VertexId) -> f64,
) -> f64 {
    let mut sum = 0.0;
    for &u in g.in_neighbors(v) {
        sum += rank(u) / g.out_degree(u) as f64;
    }
    teleport + alpha * sum
}

struct SharedRanks(Vec<AtomicU64>);

impl SharedRanks {
    fn from_slice(values: &[f64]) -> Self {
        Self(values.iter().map(|x| AtomicU64::new(x.to_bits())).collect())
    }

    #[inline(always)]
    fn get(&self, v: VertexId) -> f64 {
        f64::from_bits(self.0[v as usize].load(Ordering::Relaxed))
    }

    #[inline(always)]
    fn set(&self, v: usize, x: f64) {
        self.0[v].store(x.to_bits(), Ordering::Relaxed);
    }

    fn to_vector(&self) -> RankVector {
        RankVector(
            self.0
                .iter()
                .map(|x| f64::from_bits(x.load(Ordering::Relaxed)))
                .collect(),
        )
    }
}

const UNTOUCHED: u8 = 0;
const AFFECTED: u8 = 1;
/// Marked during the current synchronous iteration; processed from the next.
const PENDING: u8 = 2;

fn new_flags(n: usize) -> Vec<AtomicU8> {
    (0..n).map(|_| AtomicU8::new(UNTOUCHED)).collect()
}

#[inline(always)]
fn mark(flags: &[AtomicU8], v: VertexId, value: u8) {
    let slot = &flags[v as usize];
    if slot.load(Ordering::Relaxed) == UNTOUCHED {
        slot.store(value, Ordering::Relaxed);
    }
}

fn check_pair(prev: &GraphSnapshot, curr: &GraphSnapshot) -> Result<()> {
    if prev.n() != curr.n() {
        return Err(Error::contract(format!(
            "snapshots disagree on vertex count ({} vs {})",
            prev.n(),
            curr.n()
        )));
    }
    Ok(())
}

fn check_batch(n: usize, batch: &BatchUpdate) -> Result<()> {
    for (u, v) in batch.edges() {
        for id in [u, v] {
            if id as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: id.into(),
                    n,
                });
            }
        }
    }
    Ok(())
}

/// Flags every vertex reachable from a batch source in either snapshot,
/// sources included.
pub fn mark_reachable(
    prev: &GraphSnapshot,
    curr: &GraphSnapshot,
    batch: &BatchUpdate,
) -> Result<AffectedFlags> {
    check_pair(prev, curr)?;
    check_batch(curr.n(), batch)?;
    let flags = new_flags(curr.n());
    mark_reachable_into(&flags, prev, curr, batch);
    Ok(AffectedFlags::from_atomic(&flags))
}

/// Level-synchronous breadth-first search over the union of both snapshots.
fn mark_reachable_into(
    flags: &[AtomicU8],
    prev: &GraphSnapshot,
    curr: &GraphSnapshot,
    batch: &BatchUpdate,
) {
    let claim = |v: VertexId| flags[v as usize].swap(AFFECTED, Ordering::Relaxed) == UNTOUCHED;
    let mut frontier: Vec<VertexId> = batch
        .edges()
        .map(|(u, _)| u)
        .filter(|&u| claim(u))
        .collect();
    while !frontier.is_empty() {
        frontier = frontier
            .par_iter()
            .flat_map_iter(|&u| {
                prev.out_neighbors(u)
                    .iter()
                    .chain(curr.out_neighbors(u))
                    .copied()
                    .filter(|&w| claim(w))
            })
            .collect();
    }
}

/// Flags the out-neighbours, in either snapshot, of every batch source.
///
/// A source is flagged only through some out-list; on a normalized graph its
/// own self-loop puts it there.
pub fn mark_initial_affected(
    prev: &GraphSnapshot,
    curr: &GraphSnapshot,
    batch: &BatchUpdate,
) -> Result<AffectedFlags> {
    check_pair(prev, curr)?;
    check_batch(curr.n(), batch)?;
    let flags = new_flags(curr.n());
    mark_initial_into(&flags, prev, curr, batch);
    Ok(AffectedFlags::from_atomic(&flags))
}

fn mark_initial_into(
    flags: &[AtomicU8],
    prev: &GraphSnapshot,
    curr: &GraphSnapshot,
    batch: &BatchUpdate,
) {
    let sources: Vec<VertexId> = batch.edges().map(|(u, _)| u).collect();
    sources.par_iter().for_each(|&u| {
        for &w in prev.out_neighbors(u).iter().chain(curr.out_neighbors(u)) {
            mark(flags, w, AFFECTED);
        }
    });
}

/// Which vertices an iteration recomputes.
#[derive(Clone, Copy)]
enum Scope<'a> {
    All,
    /// Flagged vertices; when `expand` is set, out-neighbours of a vertex
    /// whose rank moved by more than the frontier tolerance are flagged too.
    Flagged {
        flags: &'a [AtomicU8],
        expand: bool,
    },
}

struct Outcome {
    ranks: RankVector,
    iterations: usize,
    rank_updates: u64,
    converged: bool,
}

/// A thread pool plus configuration. Not meant to be shared by concurrent
/// runs.
pub struct Engine {
    config: EngineConfig,
    pool: ThreadPool,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("config", &self.config)
            .finish_non_exhaustive()
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Result<Self> {
        config.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .thread_name(|i| format!("dynrank-{i}"))
            .build()
            .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
        Ok(Self { config, pool })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// Dispatches to the engine for `approach`. `prev`, `batch` and `seed`
    /// are ignored by [`Approach::Static`].
    pub fn run(
        &self,
        approach: Approach,
        prev: &GraphSnapshot,
        curr: &GraphSnapshot,
        batch: &BatchUpdate,
        seed: &RankVector,
    ) -> Result<RunResult> {
        match approach {
            Approach::Static => self.static_pagerank(curr),
            Approach::Naive => self.naive_dynamic_pagerank(curr, seed),
            Approach::Traversal => self.dynamic_traversal_pagerank(prev, curr, batch, seed),
            Approach::Frontier => self.dynamic_frontier_pagerank(prev, curr, batch, seed),
        }
    }

    /// Power iteration from `1/n` over all vertices.
    pub fn static_pagerank(&self, g: &GraphSnapshot) -> Result<RunResult> {
        check_graph(g)?;
        let seed = RankVector::uniform(g.n());
        self.full_run(g, &seed)
    }

    /// Power iteration over all vertices, seeded with `seed`.
    pub fn naive_dynamic_pagerank(
        &self,
        g: &GraphSnapshot,
        seed: &RankVector,
    ) -> Result<RunResult> {
        check_graph(g)?;
        check_seed(g, seed)?;
        self.full_run(g, seed)
    }

    fn full_run(&self, g: &GraphSnapshot, seed: &RankVector) -> Result<RunResult> {
        let (cur, next) = self.buffers(seed);
        let start = Instant::now();
        let out = self.iterate(g, &cur, next.as_ref(), Scope::All, None);
        let elapsed = start.elapsed().as_secs_f64();
        Ok(RunResult {
            ranks: out.ranks,
            iterations: out.iterations,
            rank_updates: out.rank_updates,
            affected_final: g.n(),
            elapsed,
            converged: out.converged,
            flags: None,
        })
    }

    /// Recomputes only vertices reachable from the batch sources in either
    /// snapshot; every other vertex keeps its seed value.
    pub fn dynamic_traversal_pagerank(
        &self,
        prev: &GraphSnapshot,
        curr: &GraphSnapshot,
        batch: &BatchUpdate,
        seed: &RankVector,
    ) -> Result<RunResult> {
        self.check_dynamic(prev, curr, batch, seed)?;
        let (cur, next) = self.buffers(seed);
        let flags = new_flags(curr.n());
        let start = Instant::now();
        self.pool
            .install(|| mark_reachable_into(&flags, prev, curr, batch));
        let scope = Scope::Flagged {
            flags: &flags,
            expand: false,
        };
        let out = self.iterate(curr, &cur, next.as_ref(), scope, None);
        let elapsed = start.elapsed().as_secs_f64();
        Ok(self.dynamic_result(out, &flags, elapsed))
    }

    /// Dynamic Frontier: starts from the out-neighbours of the batch sources
    /// and flags the out-neighbours of any vertex whose rank moves by more
    /// than the frontier tolerance.
    pub fn dynamic_frontier_pagerank(
        &self,
        prev: &GraphSnapshot,
        curr: &GraphSnapshot,
        batch: &BatchUpdate,
        seed: &RankVector,
    ) -> Result<RunResult> {
        self.frontier(prev, curr, batch, seed, None)
    }

    /// Like [`Engine::dynamic_frontier_pagerank`], also returning the affected
    /// set as it stood after initial marking and after every iteration.
    pub fn dynamic_frontier_traced(
        &self,
        prev: &GraphSnapshot,
        curr: &GraphSnapshot,
        batch: &BatchUpdate,
        seed: &RankVector,
    ) -> Result<(RunResult, Vec<AffectedFlags>)> {
        let mut trace = Vec::new();
        let result = self.frontier(prev, curr, batch, seed, Some(&mut trace))?;
        Ok((result, trace))
    }

    fn frontier(
        &self,
        prev: &GraphSnapshot,
        curr: &GraphSnapshot,
        batch: &BatchUpdate,
        seed: &RankVector,
        mut trace: Option<&mut Vec<AffectedFlags>>,
    ) -> Result<RunResult> {
        self.check_dynamic(prev, curr, batch, seed)?;
        let (cur, next) = self.buffers(seed);
        let flags = new_flags(curr.n());
        let start = Instant::now();
        self.pool
            .install(|| mark_initial_into(&flags, prev, curr, batch));
        if let Some(t) = trace.as_deref_mut() {
            t.push(AffectedFlags::from_atomic(&flags));
        }
        let scope = Scope::Flagged {
            flags: &flags,
            expand: true,
        };
        let out = self.iterate(curr, &cur, next.as_ref(), scope, trace);
        let elapsed = start.elapsed().as_secs_f64();
        Ok(self.dynamic_result(out, &flags, elapsed))
    }

    fn dynamic_result(&self, out: Outcome, flags: &[AtomicU8], elapsed: f64) -> RunResult {
        let flags = AffectedFlags::from_atomic(flags);
        RunResult {
            ranks: out.ranks,
            iterations: out.iterations,
            rank_updates: out.rank_updates,
            affected_final: flags.count(),
            elapsed,
            converged: out.converged,
            flags: Some(flags),
        }
    }

    fn check_dynamic(
        &self,
        prev: &GraphSnapshot,
        curr: &GraphSnapshot,
        batch: &BatchUpdate,
        seed: &RankVector,
    ) -> Result<()> {
        check_graph(curr)?;
        check_pair(prev, curr)?;
        check_seed(curr, seed)?;
        check_batch(curr.n(), batch)
    }

    fn buffers(&self, seed: &RankVector) -> (SharedRanks, Option<SharedRanks>) {
        let cur = SharedRanks::from_slice(seed);
        let next = match self.config.mode {
            Mode::Synchronous => Some(SharedRanks::from_slice(seed)),
            Mode::Asynchronous => None,
        };
        (cur, next)
    }

    /// The iteration loop shared by every engine.
    ///
    /// In synchronous mode both buffers start equal to the seed. A vertex
    /// that is recomputed once is recomputed in every later iteration, so its
    /// slot is overwritten on each swap while the slots of vertices never
    /// recomputed keep the seed in both buffers.
    fn iterate(
        &self,
        g: &GraphSnapshot,
        first: &SharedRanks,
        second: Option<&SharedRanks>,
        scope: Scope<'_>,
        mut trace: Option<&mut Vec<AffectedFlags>>,
    ) -> Outcome {
        let cfg = &self.config;
        let n = g.n();
        let alpha = cfg.alpha;
        let teleport = (1.0 - alpha) / n as f64;
        let tau_f = cfg.frontier_tolerance();
        let synchronous = second.is_some();
        let mark_value = if synchronous { PENDING } else { AFFECTED };

        let (mut read, mut write) = (first, second.unwrap_or(first));
        let mut iterations = 0;
        let mut rank_updates = 0u64;
        let mut converged = false;

        while iterations < cfg.max_iterations {
            let parts = for_each_chunk(
                &self.pool,
                n,
                cfg.chunk_size,
                || (0.0f64, 0u64),
                |range, (max_delta, updates)| {
                    for v in range {
                        let vid = v as VertexId;
                        if let Scope::Flagged { flags, .. } = scope {
                            if flags[v].load(Ordering::Relaxed) != AFFECTED {
                                continue;
                            }
                        }
                        let old = read.get(vid);
                        let new = update(g, vid, alpha, teleport, |u| read.get(u));
                        write.set(v, new);
                        let delta = (new - old).abs();
                        *max_delta = max_delta.max(delta);
                        *updates += 1;
                        if let Scope::Flagged {
                            flags,
                            expand: true,
                        } = scope
                        {
                            if delta > tau_f {
                                for &w in g.out_neighbors(vid) {
                                    mark(flags, w, mark_value);
                                }
                            }
                        }
                    }
                },
            );
            iterations += 1;
            let mut max_delta = 0.0f64;
            for (d, u) in parts {
                max_delta = max_delta.max(d);
                rank_updates += u;
            }
            if synchronous {
                std::mem::swap(&mut read, &mut write);
                if let Scope::Flagged {
                    flags,
                    expand: true,
                } = scope
                {
                    self.promote_pending(flags);
                }
            }
            if let (Some(t), Scope::Flagged { flags, .. }) = (trace.as_deref_mut(), scope) {
                t.push(AffectedFlags::from_atomic(flags));
            }
            if max_delta <= cfg.tau {
                converged = true;
                break;
            }
        }

        Outcome {
            ranks: read.to_vector(),
            iterations,
            rank_updates,
            converged,
        }
    }

    fn promote_pending(&self, flags: &[AtomicU8]) {
        for_each_chunk(
            &self.pool,
            flags.len(),
            self.config.chunk_size,
            || (),
            |range, _| {
                for f in &flags[range] {
                    if f.load(Ordering::Relaxed) == PENDING {
                        f.store(AFFECTED, Ordering::Relaxed);
                    }
                }
            },
        );
    }
}

fn check_graph(g: &GraphSnapshot) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

fn check_seed(g: &GraphSnapshot, seed: &RankVector) -> Result<()> {
    if seed.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: seed.len(),
        });
    }
    Ok(())
}
