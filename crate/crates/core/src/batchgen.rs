//! Seeded random batch updates and random graphs.
//!
//! Insertions are uniform random ordered pairs `(u, v)`, `u != v`, that are
//! not yet edges; deletions are a uniform sample, without replacement, of the
//! existing non-self-loop edges. Every draw comes from a [`ChaCha8Rng`]
//! seeded with the batch's 64-bit seed, so a `(graph, spec)` pair always
//! yields the same batch.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{BatchUpdate, Edge, GraphSnapshot};
use crate::{Error, Result, VertexId};

/// Name of the generator behind every random draw in this crate.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha, seed_from_u64; stream 0 batches, stream 1 graphs)";

/// ChaCha stream used for batches; graphs draw from their own stream so a
/// graph and a batch built from the same seed are independent.
const BATCH_STREAM: u64 = 0;
const GRAPH_STREAM: u64 = 1;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Insertion attempts allowed per requested insertion.
const RETRY_FACTOR: usize = 100;

/// Size and composition of a random batch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSpec {
    /// Batch size as a fraction of the graph's edge count.
    pub fraction: f64,
    /// Share of insertions: 1.0 is insertions only, 0.0 deletions only.
    pub insert_ratio: f64,
    pub seed: u64,
}

impl BatchSpec {
    pub fn new(fraction: f64, insert_ratio: f64, seed: u64) -> Self {
        Self {
            fraction,
            insert_ratio,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fraction >= 0.0 && self.fraction.is_finite()) {
            return Err(Error::Config(format!(
                "fraction must be >= 0, got {}",
                self.fraction
            )));
        }
        if !(0.0..=1.0).contains(&self.insert_ratio) {
            return Err(Error::Config(format!(
                "insert_ratio must lie in [0, 1], got {}",
                self.insert_ratio
            )));
        }
        Ok(())
    }

    /// `(insertions, deletions)` requested for a graph with `m` edges.
    pub fn counts(&self, m: usize) -> (usize, usize) {
        let total = self.fraction * m as f64;
        // Half-up, with slack so 2.5 * (1 - 0.8) still rounds to 1.
        let round = |x: f64| (x + 0.5 + 1e-9).floor() as usize;
        let mut inserts = round(total * self.insert_ratio);
        let mut deletes = round(total * (1.0 - self.insert_ratio));
        if inserts + deletes == 0 && total > 0.0 {
            if self.insert_ratio >= 0.5 {
                inserts = 1;
            } else {
                deletes = 1;
            }
        }
        (inserts, deletes)
    }
}

/// Draws a batch for `g` according to `spec`.
///
/// Fails with [`Error::Contract`] when more deletions are requested than
/// there are non-self-loop edges, and with [`Error::Generation`] when the
/// graph is too dense to place the insertions within the retry budget.
pub fn generate_batch(g: &GraphSnapshot, spec: &BatchSpec) -> Result<BatchUpdate> {
    spec.validate()?;
    let (inserts, deletes) = spec.counts(g.m());
    let mut rng = rng_for(spec.seed, BATCH_STREAM);

    let mut deletions = Vec::with_capacity(deletes);
    if deletes > 0 {
        let candidates: Vec<Edge> = g.edges().filter(|&(u, v)| u != v).collect();
        if deletes > candidates.len() {
            return Err(Error::contract(format!(
                "{deletes} deletions requested but the graph has only {} non-self-loop edges",
                candidates.len()
            )));
        }
        deletions.extend(
            index::sample(&mut rng, candidates.len(), deletes)
                .into_iter()
                .map(|i| candidates[i]),
        );
    }

    let mut insertions = Vec::with_capacity(inserts);
    if inserts > 0 {
        let n = g.n();
        if n < 2 {
            return Err(Error::Generation(format!(
                "cannot insert edges into a graph with {n} vertices"
            )));
        }
        let mut chosen: HashSet<Edge> = HashSet::with_capacity(inserts);
        let budget = RETRY_FACTOR * inserts;
        let mut attempts = 0;
        while insertions.len() < inserts {
            if attempts == budget {
                return Err(Error::Generation(format!(
                    "placed {} of {inserts} insertions after {budget} attempts",
                    insertions.len()
                )));
            }
            attempts += 1;
            let u = rng.random_range(0..n) as VertexId;
            let v = rng.random_range(0..n) as VertexId;
            if u == v || g.has_edge(u, v) || !chosen.insert((u, v)) {
                continue;
            }
            insertions.push((u, v));
        }
    }

    BatchUpdate::new(deletions, insertions)
}

/// Uniform random simple digraph with `n` vertices and `m` distinct
/// non-self-loop edges. The result is not normalized.
pub fn random_digraph(n: usize, m: usize, seed: u64) -> Result<GraphSnapshot> {
    let capacity = n.saturating_mul(n.saturating_sub(1));
    if m > capacity {
        return Err(Error::Generation(format!(
            "{m} edges do not fit in {n} vertices"
        )));
    }
    let mut rng = rng_for(seed, GRAPH_STREAM);
    let mut seen: HashSet<Edge> = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n) as VertexId;
        let v = rng.random_range(0..n) as VertexId;
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
        }
    }
    GraphSnapshot::from_edges(n, edges)
}
