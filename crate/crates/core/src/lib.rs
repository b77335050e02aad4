//! Static and incremental PageRank on batch-updated directed graphs.
//!
//! The crate is organised around a pair of immutable [`GraphSnapshot`]s: the
//! graph before a [`BatchUpdate`] and the graph after it. Four strategies are
//! provided by [`Engine`]:
//!
//! * **static** recomputes every rank from the uniform vector,
//! * **naive** recomputes every rank from the previous snapshot's ranks,
//! * **traversal** recomputes only vertices reachable from the batch sources,
//! * **frontier** starts from the out-neighbours of the batch sources and
//!   grows the set of recomputed vertices whenever a rank moves by more than
//!   the frontier tolerance.
//!
//! All strategies run either synchronously (two rank buffers swapped every
//! iteration) or asynchronously (one buffer updated in place). The
//! [`harness`] module drives batch-size and thread-count sweeps and reports
//! error, work and timing figures.

pub mod batchgen;
pub mod engine;
mod error;
pub mod graph;
pub mod harness;
mod sched;

pub use batchgen::{generate_batch, random_digraph, BatchSpec};
pub use engine::{
    mark_initial_affected, mark_reachable, rank_of, AffectedFlags, Approach, Engine, EngineConfig,
    Mode, RankVector, RunResult,
};
pub use error::{Error, Result};
pub use graph::{
    add_self_loops, apply_batch, apply_batch_with, load_edge_list, BatchPolicy, BatchUpdate,
    GraphSnapshot,
};

/// Vertex identifier. Graphs are limited to `u32::MAX` vertices.
pub type VertexId = u32;
