//! Fixtures shared by the benchmarks.

use dynrank_core::{
    add_self_loops, apply_batch, generate_batch, random_digraph, BatchSpec, BatchUpdate, Engine,
    EngineConfig, GraphSnapshot, Mode, RankVector,
};

/// A base graph, one batch applied to it, and converged ranks of the base.
pub struct Fixture {
    pub prev: GraphSnapshot,
    pub curr: GraphSnapshot,
    pub batch: BatchUpdate,
    pub seed: RankVector,
}

impl Fixture {
    pub fn new(n: usize, m: usize, fraction: f64, insert_ratio: f64) -> Self {
        let prev = add_self_loops(&random_digraph(n, m, 1).expect("graph fits"));
        let batch =
            generate_batch(&prev, &BatchSpec::new(fraction, insert_ratio, 2)).expect("batch");
        let curr = apply_batch(&prev, &batch).expect("valid batch");
        let cfg = EngineConfig::default().with_mode(Mode::Synchronous);
        let seed = Engine::new(cfg)
            .expect("valid config")
            .static_pagerank(&prev)
            .expect("normalized")
            .ranks;
        Self {
            prev,
            curr,
            batch,
            seed,
        }
    }
}
