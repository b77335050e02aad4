//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use dynrank_core::{add_self_loops, random_digraph, BatchUpdate, GraphSnapshot};

/// Solves `(I - α Pᵀ) r = (1 - α)/n · 1` by Gaussian elimination with partial
/// pivoting, where `P[u][v] = 1 / outdeg(u)` for every edge `(u, v)`.
#[allow(clippy::needless_range_loop)]
pub fn dense_pagerank(g: &GraphSnapshot, alpha: f64) -> Vec<f64> {
    let n = g.n();
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let mut outdeg = vec![0usize; n];
    for &(u, _) in &edges {
        outdeg[u as usize] += 1;
    }
    // Row v of the system: r[v] - α Σ_{u→v} r[u] / outdeg[u] = (1 - α) / n.
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for (v, row) in a.iter_mut().enumerate() {
        row[v] = 1.0;
        row[n] = (1.0 - alpha) / n as f64;
    }
    for &(u, v) in &edges {
        a[v as usize][u as usize] -= alpha / outdeg[u as usize] as f64;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let p = a[col][col];
        for k in col..=n {
            a[col][k] /= p;
        }
        for row in 0..n {
            if row != col && a[row][col] != 0.0 {
                let factor = a[row][col];
                for k in col..=n {
                    let delta = factor * a[col][k];
                    a[row][k] -= delta;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n]).collect()
}

/// Dense evaluation of one rank update row: `(1-α)/n + α Σ_u M[v][u] r[u]`.
pub fn dense_row(g: &GraphSnapshot, v: u32, r: &[f64], alpha: f64) -> f64 {
    let n = g.n();
    let mut m = vec![vec![0.0; n]; n];
    for u in 0..n as u32 {
        let d = g.out_neighbors(u).len() as f64;
        for &w in g.out_neighbors(u) {
            m[w as usize][u as usize] = 1.0 / d;
        }
    }
    (1.0 - alpha) / n as f64 + alpha * (0..n).map(|u| m[v as usize][u] * r[u]).sum::<f64>()
}

fn adjacency(g: &GraphSnapshot) -> HashMap<u32, Vec<u32>> {
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for (u, v) in g.edges() {
        adj.entry(u).or_default().push(v);
    }
    adj
}

/// Vertices reachable from any batch source in either snapshot, by a plain
/// queue-based search over hash-map adjacency.
pub fn reachable_oracle(
    prev: &GraphSnapshot,
    curr: &GraphSnapshot,
    b: &BatchUpdate,
) -> BTreeSet<u32> {
    let (a, c) = (adjacency(prev), adjacency(curr));
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<u32> = b.edges().map(|(u, _)| u).collect();
    while let Some(u) = queue.pop_front() {
        if !seen.insert(u) {
            continue;
        }
        for adj in [&a, &c] {
            for &w in adj.get(&u).into_iter().flatten() {
                if !seen.contains(&w) {
                    queue.push_back(w);
                }
            }
        }
    }
    seen
}

/// Union of out-neighbourhoods of batch sources over both snapshots.
pub fn initial_oracle(
    prev: &GraphSnapshot,
    curr: &GraphSnapshot,
    b: &BatchUpdate,
) -> BTreeSet<u32> {
    let sources: BTreeSet<u32> = b.edges().map(|(u, _)| u).collect();
    prev.edges()
        .chain(curr.edges())
        .filter(|(u, _)| sources.contains(u))
        .map(|(_, v)| v)
        .collect()
}

pub fn normalized_random(n: usize, m: usize, seed: u64) -> GraphSnapshot {
    add_self_loops(&random_digraph(n, m, seed).unwrap())
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// The 16-vertex, 25-edge example graph before the batch, without
/// self-loops. Vertex 2 points at {1, 4, 8}, vertex 4 at {3}; 1 at {3, 5},
/// 12 at {11, 14}; and {3, 5, 11, 14} point at {4, 6, 15}.
pub const EXAMPLE_EDGES: [(u32, u32); 25] = [
    (0, 1),
    (0, 2),
    (1, 3),
    (1, 5),
    (2, 1),
    (2, 4),
    (2, 8),
    (3, 4),
    (4, 3),
    (5, 6),
    (6, 7),
    (6, 13),
    (7, 0),
    (8, 9),
    (9, 2),
    (9, 10),
    (10, 7),
    (10, 13),
    (11, 15),
    (12, 11),
    (12, 14),
    (13, 12),
    (14, 6),
    (14, 15),
    (15, 0),
];

pub fn example_graph() -> GraphSnapshot {
    GraphSnapshot::from_edges(16, EXAMPLE_EDGES).unwrap()
}

pub fn example_batch() -> BatchUpdate {
    BatchUpdate::new(vec![(2, 1)], vec![(4, 12)]).unwrap()
}
