//! Immutable directed graph snapshots and batch updates between them.
//!
//! A [`GraphSnapshot`] stores both out- and in-adjacency in compressed
//! sparse row form with sorted, duplicate-free neighbour lists. Snapshots are
//! never mutated: [`apply_batch`] merges a [`BatchUpdate`] into a fresh
//! snapshot so the previous one stays readable alongside it.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, VertexId};

/// Directed edge `(source, target)`.
pub type Edge = (VertexId, VertexId);

/// Read-optimised directed graph with sorted out- and in-neighbour arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSnapshot {
    n: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<VertexId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<VertexId>,
    missing_self_loops: usize,
}

impl GraphSnapshot {
    /// Graph with no vertices.
    pub fn empty() -> Self {
        Self::from_out_lists(0, vec![0], Vec::new())
    }

    /// Builds a snapshot over `n` vertices. Duplicate edges collapse; edges
    /// are kept as given (no self-loops are added).
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        check_vertex_count(n)?;
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for id in [u, v] {
                if id as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: id.into(),
                        n,
                    });
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut out_offsets = vec![0usize; n + 1];
        for &(u, _) in &edges {
            out_offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets = edges.into_iter().map(|(_, v)| v).collect();
        Ok(Self::from_out_lists(n, out_offsets, out_targets))
    }

    /// Assembles a snapshot from sorted, duplicate-free out-lists and derives
    /// the in-lists with a counting pass. Scanning sources in increasing order
    /// leaves every in-list sorted.
    fn from_out_lists(n: usize, out_offsets: Vec<usize>, out_targets: Vec<VertexId>) -> Self {
        debug_assert_eq!(out_offsets.len(), n + 1);
        let mut in_offsets = vec![0usize; n + 1];
        for &v in &out_targets {
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut cursor = in_offsets[..n].to_vec();
        let mut in_sources = vec![0 as VertexId; out_targets.len()];
        let mut missing_self_loops = 0;
        for u in 0..n {
            let targets = &out_targets[out_offsets[u]..out_offsets[u + 1]];
            if targets.binary_search(&(u as VertexId)).is_err() {
                missing_self_loops += 1;
            }
            for &v in targets {
                let slot = &mut cursor[v as usize];
                in_sources[*slot] = u as VertexId;
                *slot += 1;
            }
        }
        Self {
            n,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            missing_self_loops,
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, self-loops included.
    #[inline]
    pub fn m(&self) -> usize {
        self.out_targets.len()
    }

    #[inline]
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.n && self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// True when every vertex carries a self-loop, so no vertex is a dead end.
    pub fn is_normalized(&self) -> bool {
        self.missing_self_loops == 0
    }

    /// Average out-degree `m / n`, or 0 for the empty graph.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.m() as f64 / self.n as f64
        }
    }

    /// All edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n as VertexId)
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n as VertexId
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n > VertexId::MAX as usize {
        return Err(Error::Contract(format!(
            "{n} vertices exceed the 32-bit id space"
        )));
    }
    Ok(())
}

/// Returns a copy of `g` in which every vertex has a self-loop.
///
/// Idempotent; all existing edges are kept.
pub fn add_self_loops(g: &GraphSnapshot) -> GraphSnapshot {
    if g.is_normalized() {
        return g.clone();
    }
    let mut out_offsets = Vec::with_capacity(g.n + 1);
    let mut out_targets = Vec::with_capacity(g.m() + g.missing_self_loops);
    out_offsets.push(0);
    for u in g.vertices() {
        let targets = g.out_neighbors(u);
        match targets.binary_search(&u) {
            Ok(_) => out_targets.extend_from_slice(targets),
            Err(pos) => {
                out_targets.extend_from_slice(&targets[..pos]);
                out_targets.push(u);
                out_targets.extend_from_slice(&targets[pos..]);
            }
        }
        out_offsets.push(out_targets.len());
    }
    GraphSnapshot::from_out_lists(g.n, out_offsets, out_targets)
}

/// Edge deletions and insertions that turn one snapshot into the next.
///
/// Both sides are stored sorted and duplicate-free. A pair never appears on
/// both sides and self-loops are never deleted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatchUpdate {
    deletions: Vec<Edge>,
    insertions: Vec<Edge>,
}

impl BatchUpdate {
    pub fn new(mut deletions: Vec<Edge>, mut insertions: Vec<Edge>) -> Result<Self> {
        deletions.sort_unstable();
        deletions.dedup();
        insertions.sort_unstable();
        insertions.dedup();
        if let Some(&(u, _)) = deletions.iter().find(|&&(u, v)| u == v) {
            return Err(Error::contract(format!(
                "batch deletes self-loop ({u}, {u})"
            )));
        }
        let (mut i, mut j) = (0, 0);
        while i < deletions.len() && j < insertions.len() {
            match deletions[i].cmp(&insertions[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let (u, v) = deletions[i];
                    return Err(Error::contract(format!(
                        "edge ({u}, {v}) is both deleted and inserted"
                    )));
                }
            }
        }
        Ok(Self {
            deletions,
            insertions,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn deletions(&self) -> &[Edge] {
        &self.deletions
    }

    pub fn insertions(&self) -> &[Edge] {
        &self.insertions
    }

    pub fn len(&self) -> usize {
        self.deletions.len() + self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every updated edge, deletions first.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.deletions.iter().chain(&self.insertions).copied()
    }

    /// The batch that undoes this one.
    pub fn inverse(&self) -> Self {
        Self {
            deletions: self.insertions.clone(),
            insertions: self.deletions.clone(),
        }
    }

    /// Writes the batch as `- u v` / `+ u v` lines, deletions first.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for &(u, v) in &self.deletions {
            writeln!(w, "- {u} {v}")?;
        }
        for &(u, v) in &self.insertions {
            writeln!(w, "+ {u} {v}")?;
        }
        Ok(())
    }

    /// Parses the format written by [`BatchUpdate::write_to`]. Blank lines and
    /// `#` comments are ignored.
    pub fn read_from<R: BufRead>(reader: R) -> Result<Self> {
        let mut deletions = Vec::new();
        let mut insertions = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let sign = tokens.next().unwrap_or_default();
            let u = parse_id(tokens.next(), line_no)?;
            let v = parse_id(tokens.next(), line_no)?;
            if tokens.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "trailing tokens".into(),
                });
            }
            let (u, v) = (to_vertex(u, line_no)?, to_vertex(v, line_no)?);
            match sign {
                "-" => deletions.push((u, v)),
                "+" => insertions.push((u, v)),
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected '+' or '-', found {other:?}"),
                    })
                }
            }
        }
        Self::new(deletions, insertions)
    }
}

/// How [`apply_batch_with`] treats deletions of absent edges and insertions
/// of present ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BatchPolicy {
    #[default]
    Strict,
    Lenient,
}

/// Applies `batch` to `prev` under [`BatchPolicy::Strict`].
pub fn apply_batch(prev: &GraphSnapshot, batch: &BatchUpdate) -> Result<GraphSnapshot> {
    apply_batch_with(prev, batch, BatchPolicy::Strict)
}

/// Returns the snapshot `(E \ deletions) ∪ insertions` with self-loops
/// re-asserted. `prev` is left untouched.
///
/// Ids outside `[0, n)` are always an error. Deleting a missing edge or
/// inserting an existing one is an error under [`BatchPolicy::Strict`] and
/// is skipped under [`BatchPolicy::Lenient`].
pub fn apply_batch_with(
    prev: &GraphSnapshot,
    batch: &BatchUpdate,
    policy: BatchPolicy,
) -> Result<GraphSnapshot> {
    let n = prev.n();
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
    let strict = policy == BatchPolicy::Strict;
    if strict {
        if let Some(&(u, v)) = batch
            .deletions()
            .iter()
            .find(|&&(u, v)| !prev.has_edge(u, v))
        {
            return Err(Error::contract(format!(
                "deleted edge ({u}, {v}) is not in the graph"
            )));
        }
        if let Some(&(u, v)) = batch
            .insertions()
            .iter()
            .find(|&&(u, v)| prev.has_edge(u, v))
        {
            return Err(Error::contract(format!(
                "inserted edge ({u}, {v}) is already in the graph"
            )));
        }
    }

    let dels = batch.deletions();
    let ins = batch.insertions();
    let (mut di, mut ii) = (0, 0);
    let mut out_offsets = Vec::with_capacity(n + 1);
    let mut out_targets = Vec::with_capacity(prev.m() + ins.len() + prev.missing_self_loops);
    let mut merged = Vec::new();
    out_offsets.push(0);
    for u in prev.vertices() {
        let d_start = di;
        while di < dels.len() && dels[di].0 == u {
            di += 1;
        }
        let i_start = ii;
        while ii < ins.len() && ins[ii].0 == u {
            ii += 1;
        }
        let old = prev.out_neighbors(u);
        if d_start == di && i_start == ii && old.binary_search(&u).is_ok() {
            out_targets.extend_from_slice(old);
            out_offsets.push(out_targets.len());
            continue;
        }
        let removed = &dels[d_start..di];
        merged.clear();
        merged.extend(
            old.iter()
                .copied()
                .filter(|v| removed.binary_search(&(u, *v)).is_err()),
        );
        merged.extend(ins[i_start..ii].iter().map(|&(_, v)| v));
        merged.push(u);
        merged.sort_unstable();
        merged.dedup();
        out_targets.extend_from_slice(&merged);
        out_offsets.push(out_targets.len());
    }
    Ok(GraphSnapshot::from_out_lists(n, out_offsets, out_targets))
}

/// Loads a plain edge list or MatrixMarket coordinate file.
///
/// Plain files hold one `u v` pair per line with `#` or `%` comments; extra
/// columns are ignored. Ids are shifted down by `base` (0 or 1). A file whose
/// first line starts with `%%MatrixMarket` is read as 1-based coordinate data
/// regardless of `base`, and symmetric matrices yield both directions.
///
/// The returned snapshot is not normalized.
pub fn load_edge_list(path: impl AsRef<Path>, base: u32) -> Result<GraphSnapshot> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_edge_list(BufReader::new(file), base)
}

/// Parses edge-list text from any reader. See [`load_edge_list`].
pub fn parse_edge_list<R: BufRead>(reader: R, base: u32) -> Result<GraphSnapshot> {
    if base > 1 {
        return Err(Error::Config(format!("base must be 0 or 1, got {base}")));
    }
    let mut lines = reader.lines().enumerate().peekable();
    let first_is_mm = matches!(
        lines.peek(),
        Some((_, Ok(line))) if line.trim_start().starts_with("%%MatrixMarket")
    );
    let read_line = |(idx, line): (usize, io::Result<String>)| {
        line.map(|l| (idx + 1, l)).map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })
    };

    if first_is_mm {
        let (line_no, header) = read_line(lines.next().unwrap())?;
        let symmetric = parse_mm_header(&header, line_no)?;
        let mut size: Option<(u64, u64)> = None;
        let mut edges = Vec::new();
        for item in lines {
            let (line_no, line) = read_line(item)?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('%') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let a = parse_id(tokens.next(), line_no)?;
            let b = parse_id(tokens.next(), line_no)?;
            match size {
                None => {
                    parse_id(tokens.next(), line_no)?;
                    size = Some((a, b));
                }
                Some((rows, cols)) => {
                    for (id, bound) in [(a, rows), (b, cols)] {
                        if id < 1 {
                            return Err(Error::VertexBelowBase {
                                line: line_no,
                                id,
                                base: 1,
                            });
                        }
                        if id > bound {
                            return Err(Error::Parse {
                                line: line_no,
                                message: format!("index {id} exceeds matrix dimension {bound}"),
                            });
                        }
                    }
                    let (u, v) = (to_vertex(a - 1, line_no)?, to_vertex(b - 1, line_no)?);
                    edges.push((u, v));
                    if symmetric && u != v {
                        edges.push((v, u));
                    }
                }
            }
        }
        let n = size.map_or(0, |(r, c)| r.max(c)) as usize;
        return GraphSnapshot::from_edges(n, edges);
    }

    let base = u64::from(base);
    let mut edges = Vec::new();
    let mut max_id: Option<VertexId> = None;
    for item in lines {
        let (line_no, line) = read_line(item)?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let a = parse_id(tokens.next(), line_no)?;
        let b = parse_id(tokens.next(), line_no)?;
        for id in [a, b] {
            if id < base {
                return Err(Error::VertexBelowBase {
                    line: line_no,
                    id,
                    base,
                });
            }
        }
        let (u, v) = (to_vertex(a - base, line_no)?, to_vertex(b - base, line_no)?);
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    GraphSnapshot::from_edges(n, edges)
}

/// Returns whether the matrix is symmetric.
fn parse_mm_header(header: &str, line: usize) -> Result<bool> {
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    let bad = |message: String| Error::Parse { line, message };
    if tokens.len() < 3 || tokens[1] != "matrix" {
        return Err(bad(format!("unsupported MatrixMarket header {header:?}")));
    }
    if tokens[2] != "coordinate" {
        return Err(bad(format!(
            "only coordinate MatrixMarket files are supported, got {}",
            tokens[2]
        )));
    }
    Ok(match tokens.get(4).map(String::as_str) {
        None | Some("general") => false,
        Some("symmetric" | "skew-symmetric" | "hermitian") => true,
        Some(other) => return Err(bad(format!("unknown MatrixMarket symmetry {other:?}"))),
    })
}

fn parse_id(token: Option<&str>, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: "expected two vertex ids".into(),
    })?;
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

fn to_vertex(id: u64, line: usize) -> Result<VertexId> {
    VertexId::try_from(id)
        .ok()
        .filter(|&v| v < VertexId::MAX)
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("vertex id {id} exceeds 32 bits"),
        })
}
