//! Experiment driver: reference ranks, error metrics, batch-size and
//! thread-count sweeps, and CSV/JSON reporting.
//!
//! A sweep cell is one `(graph, fraction, repetition)` triple. For each cell
//! the harness draws a batch from the normalized base graph, applies it,
//! computes reference ranks on the updated graph, then runs every selected
//! approach for every `(threads, mode)` pair and emits one
//! [`ExperimentRecord`] per run. Dynamic approaches are seeded with a
//! synchronous static run on the base graph at the plan's tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::batchgen::{generate_batch, random_digraph, BatchSpec, RNG_ALGORITHM};
use crate::engine::{Approach, Engine, EngineConfig, Mode, RankVector, RunResult};
use crate::graph::{
    add_self_loops, apply_batch_with, load_edge_list, BatchPolicy, BatchUpdate, GraphSnapshot,
};
use crate::{Error, Result};

/// Tolerance of the reference run; unreachable in double precision, so the
/// run normally uses its whole iteration budget.
pub const REFERENCE_TOLERANCE: f64 = 1e-100;
pub const REFERENCE_ITERATIONS: usize = 500;

/// Graphs above this size skip the per-run skip-contract and containment
/// checks.
pub const VERIFY_MAX_VERTICES: usize = 100_000;

/// CSV column order.
pub const CSV_HEADER: [&str; 16] = [
    "graph",
    "approach",
    "mode",
    "fraction",
    "insert_ratio",
    "repetition",
    "threads",
    "seed",
    "elapsed_s",
    "preprocess_s",
    "iterations",
    "rank_updates",
    "affected_final",
    "affected_fraction",
    "l1_error",
    "converged",
];

/// Columns that carry wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 2] = ["elapsed_s", "preprocess_s"];

/// High-precision ranks: synchronous static PageRank with tolerance 1e-100
/// capped at 500 iterations, using default engine parameters.
pub fn reference_ranks(g: &GraphSnapshot) -> Result<RankVector> {
    reference_ranks_with(g, &EngineConfig::default())
}

/// [`reference_ranks`] taking `alpha`, `threads` and `chunk_size` from `base`.
pub fn reference_ranks_with(g: &GraphSnapshot, base: &EngineConfig) -> Result<RankVector> {
    let cfg = EngineConfig {
        tau: REFERENCE_TOLERANCE,
        tau_f: Some(REFERENCE_TOLERANCE),
        max_iterations: REFERENCE_ITERATIONS,
        mode: Mode::Synchronous,
        ..base.clone()
    };
    Ok(Engine::new(cfg)?.static_pagerank(g)?.ranks)
}

/// Sum of absolute per-vertex differences.
pub fn l1_error(ranks: &[f64], reference: &[f64]) -> Result<f64> {
    if ranks.len() != reference.len() {
        return Err(Error::LengthMismatch {
            expected: reference.len(),
            found: ranks.len(),
        });
    }
    Ok(ranks
        .iter()
        .zip(reference)
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// `exp(mean(ln x))` over strictly positive values.
pub fn geometric_mean(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::contract("geometric mean of an empty list"));
    }
    if let Some(x) = xs.iter().find(|&&x| x.is_nan() || x <= 0.0) {
        return Err(Error::contract(format!(
            "geometric mean needs positive values, got {x}"
        )));
    }
    Ok((xs.iter().map(|x| x.ln()).sum::<f64>() / xs.len() as f64).exp())
}

/// Geometric mean that tolerates zeros (any zero gives 0) and returns NaN for
/// an empty list. Used for summary rows, where zero work or error is common.
fn summary_mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        f64::NAN
    } else if xs.contains(&0.0) {
        0.0
    } else {
        geometric_mean(xs).unwrap_or(f64::NAN)
    }
}

/// Where a base graph comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphSource {
    /// Edge list or MatrixMarket file.
    File { path: PathBuf, base: u32 },
    /// Uniform random digraph with `m` non-self-loop edges.
    Random { n: usize, m: usize, seed: u64 },
}

impl GraphSource {
    /// Short label used in the `graph` column.
    pub fn name(&self) -> String {
        match self {
            GraphSource::File { path, .. } => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
            GraphSource::Random { n, m, seed } => format!("random-{n}-{m}-{seed}"),
        }
    }

    /// Loads or generates the graph and adds self-loops.
    pub fn load(&self) -> Result<GraphSnapshot> {
        let raw = match self {
            GraphSource::File { path, base } => load_edge_list(path, *base)?,
            GraphSource::Random { n, m, seed } => random_digraph(*n, *m, *seed)?,
        };
        Ok(add_self_loops(&raw))
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File { path, .. } => write!(f, "{}", path.display()),
            GraphSource::Random { n, m, seed } => write!(f, "random:{n}:{m}:{seed}"),
        }
    }
}

impl FromStr for GraphSource {
    type Err = Error;

    /// `random:N:M[:SEED]` or a file path (base 0).
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("random:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let num = |t: &str| {
                t.parse::<u64>()
                    .map_err(|_| Error::Config(format!("bad number {t:?} in graph spec {s:?}")))
            };
            return match parts.as_slice() {
                [n, m] => Ok(GraphSource::Random {
                    n: num(n)? as usize,
                    m: num(m)? as usize,
                    seed: 0,
                }),
                [n, m, seed] => Ok(GraphSource::Random {
                    n: num(n)? as usize,
                    m: num(m)? as usize,
                    seed: num(seed)?,
                }),
                _ => Err(Error::Config(format!(
                    "expected random:N:M[:SEED], got {s:?}"
                ))),
            };
        }
        Ok(GraphSource::File {
            path: PathBuf::from(s),
            base: 0,
        })
    }
}

/// A sweep over graphs, batch fractions, repetitions, thread counts, modes
/// and approaches.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub graphs: Vec<GraphSource>,
    pub approaches: Vec<Approach>,
    pub modes: Vec<Mode>,
    pub fractions: Vec<f64>,
    pub insert_ratio: f64,
    pub repetitions: usize,
    /// Repetition `r` draws its batch with seed `seed + r`.
    pub seed: u64,
    pub threads: Vec<usize>,
    /// Engine parameters; `mode` and `threads` are overridden per run.
    pub engine: EngineConfig,
    pub policy: BatchPolicy,
    /// Check the skip contract and frontier-within-traversal containment on
    /// every run over graphs with at most [`VERIFY_MAX_VERTICES`] vertices.
    pub verify: bool,
    /// Run cells concurrently. Timings are then unreliable.
    pub parallel_cells: bool,
    /// Keep each run's final ranks in [`ExperimentRecord::ranks`].
    pub keep_ranks: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        let engine = EngineConfig::default();
        Self {
            graphs: Vec::new(),
            approaches: Approach::ALL.to_vec(),
            modes: vec![Mode::Asynchronous],
            fractions: vec![1e-4],
            insert_ratio: 1.0,
            repetitions: 5,
            seed: 0,
            threads: vec![engine.threads],
            engine,
            policy: BatchPolicy::Strict,
            verify: true,
            parallel_cells: false,
            keep_ranks: false,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.into()));
        if self.graphs.is_empty() {
            return bad("plan needs at least one graph");
        }
        if self.fractions.is_empty() {
            return bad("plan needs at least one batch fraction");
        }
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1");
        }
        if self.approaches.is_empty() || self.modes.is_empty() || self.threads.is_empty() {
            return bad("plan needs at least one approach, mode and thread count");
        }
        for &fraction in &self.fractions {
            BatchSpec::new(fraction, self.insert_ratio, 0).validate()?;
        }
        for &threads in &self.threads {
            EngineConfig {
                threads,
                ..self.engine.clone()
            }
            .validate()?;
        }
        Ok(())
    }

    pub fn batch_seed(&self, repetition: usize) -> u64 {
        self.seed.wrapping_add(repetition as u64)
    }
}

/// One engine run within a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub graph: String,
    pub approach: Approach,
    pub mode: Mode,
    pub fraction: f64,
    pub insert_ratio: f64,
    pub repetition: usize,
    pub threads: usize,
    pub seed: u64,
    pub elapsed_s: f64,
    /// Time to apply the batch to the base graph.
    pub preprocess_s: f64,
    pub iterations: usize,
    pub rank_updates: u64,
    pub affected_final: usize,
    pub affected_fraction: f64,
    pub l1_error: f64,
    pub converged: bool,
    /// Set when the run failed; metric fields are then meaningless.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Final ranks, kept by [`run_single`] and by plans with `keep_ranks`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ranks: Option<RankVector>,
}

impl ExperimentRecord {
    fn blank(key: &CellKey<'_>, approach: Approach, mode: Mode, threads: usize) -> Self {
        Self {
            graph: key.graph.to_owned(),
            approach,
            mode,
            fraction: key.fraction,
            insert_ratio: key.insert_ratio,
            repetition: key.repetition,
            threads,
            seed: key.seed,
            elapsed_s: f64::NAN,
            preprocess_s: f64::NAN,
            iterations: 0,
            rank_updates: 0,
            affected_final: 0,
            affected_fraction: f64::NAN,
            l1_error: f64::NAN,
            converged: false,
            error: None,
            ranks: None,
        }
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    fn csv_fields(&self) -> Vec<String> {
        let num = |x: f64| {
            if self.is_error() {
                String::new()
            } else {
                x.to_string()
            }
        };
        let int = |x: u64| {
            if self.is_error() {
                String::new()
            } else {
                x.to_string()
            }
        };
        vec![
            self.graph.clone(),
            self.approach.to_string(),
            self.mode.to_string(),
            self.fraction.to_string(),
            self.insert_ratio.to_string(),
            self.repetition.to_string(),
            self.threads.to_string(),
            self.seed.to_string(),
            num(self.elapsed_s),
            num(self.preprocess_s),
            int(self.iterations as u64),
            int(self.rank_updates),
            int(self.affected_final as u64),
            num(self.affected_fraction),
            num(self.l1_error),
            if self.is_error() {
                "error".into()
            } else {
                self.converged.to_string()
            },
        ]
    }
}

struct CellKey<'a> {
    graph: &'a str,
    fraction: f64,
    insert_ratio: f64,
    repetition: usize,
    seed: u64,
}

/// Geometric means across graphs for one `(approach, mode, fraction,
/// threads)` group. Each graph first contributes the arithmetic mean over its
/// repetitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub approach: Approach,
    pub mode: Mode,
    pub fraction: f64,
    pub insert_ratio: f64,
    pub threads: usize,
    pub graphs: usize,
    pub elapsed_s: f64,
    pub preprocess_s: f64,
    pub iterations: f64,
    pub rank_updates: f64,
    pub affected_final: f64,
    pub affected_fraction: f64,
    pub l1_error: f64,
    pub converged: bool,
}

impl SummaryRow {
    fn csv_fields(&self) -> Vec<String> {
        vec![
            "geomean".into(),
            self.approach.to_string(),
            self.mode.to_string(),
            self.fraction.to_string(),
            self.insert_ratio.to_string(),
            String::new(),
            self.threads.to_string(),
            String::new(),
            self.elapsed_s.to_string(),
            self.preprocess_s.to_string(),
            self.iterations.to_string(),
            self.rank_updates.to_string(),
            self.affected_final.to_string(),
            self.affected_fraction.to_string(),
            self.l1_error.to_string(),
            self.converged.to_string(),
        ]
    }
}

/// Aggregates successful records into one [`SummaryRow`] per group.
pub fn summarize(records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    type GroupKey = (Approach, Mode, u64, u64, usize);
    let mut groups: BTreeMap<GroupKey, BTreeMap<&str, Vec<&ExperimentRecord>>> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.is_error()) {
        let key = (
            r.approach,
            r.mode,
            r.fraction.to_bits(),
            r.insert_ratio.to_bits(),
            r.threads,
        );
        groups
            .entry(key)
            .or_default()
            .entry(r.graph.as_str())
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .map(
            |((approach, mode, fraction, insert_ratio, threads), per_graph)| {
                let column = |f: &dyn Fn(&ExperimentRecord) -> f64| -> f64 {
                    let means: Vec<f64> = per_graph
                        .values()
                        .map(|rs| rs.iter().map(|r| f(r)).sum::<f64>() / rs.len() as f64)
                        .collect();
                    summary_mean(&means)
                };
                SummaryRow {
                    approach,
                    mode,
                    fraction: f64::from_bits(fraction),
                    insert_ratio: f64::from_bits(insert_ratio),
                    threads,
                    graphs: per_graph.len(),
                    elapsed_s: column(&|r| r.elapsed_s),
                    preprocess_s: column(&|r| r.preprocess_s),
                    iterations: column(&|r| r.iterations as f64),
                    rank_updates: column(&|r| r.rank_updates as f64),
                    affected_final: column(&|r| r.affected_final as f64),
                    affected_fraction: column(&|r| r.affected_fraction),
                    l1_error: column(&|r| r.l1_error),
                    converged: per_graph.values().flatten().all(|r| r.converged),
                }
            },
        )
        .collect()
}

/// Runs the whole plan and returns every record.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<ExperimentRecord>> {
    let mut records = Vec::new();
    run_experiment_with(plan, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok(records)
}

/// Runs the plan, handing each record to `sink` as soon as its cell is done.
///
/// Failures inside a cell become records with [`ExperimentRecord::error`]
/// set; only an invalid plan or a failing sink aborts the sweep.
pub fn run_experiment_with<F>(plan: &ExperimentPlan, mut sink: F) -> Result<()>
where
    F: FnMut(&ExperimentRecord) -> Result<()>,
{
    plan.validate()?;
    let mut engines = Vec::new();
    for &threads in &plan.threads {
        for &mode in &plan.modes {
            let cfg = EngineConfig {
                mode,
                threads,
                ..plan.engine.clone()
            };
            engines.push((threads, mode, Engine::new(cfg)?));
        }
    }

    for source in &plan.graphs {
        let name = source.name();
        let base = source.load().and_then(|g| {
            let seed = seed_ranks(&g, &plan.engine)?;
            Ok((g, seed))
        });
        let cells: Vec<(f64, usize)> = plan
            .fractions
            .iter()
            .flat_map(|&f| (0..plan.repetitions).map(move |r| (f, r)))
            .collect();

        let run_cell = |&(fraction, repetition): &(f64, usize)| {
            let key = CellKey {
                graph: &name,
                fraction,
                insert_ratio: plan.insert_ratio,
                repetition,
                seed: plan.batch_seed(repetition),
            };
            match &base {
                Ok((g, seed)) => run_cell(plan, &engines, &key, g, seed),
                Err(e) => error_records(plan, &key, &e.to_string()),
            }
        };

        if plan.parallel_cells {
            let all: Vec<Vec<ExperimentRecord>> = cells.par_iter().map(run_cell).collect();
            for record in all.iter().flatten() {
                sink(record)?;
            }
        } else {
            for cell in &cells {
                for record in run_cell(cell) {
                    sink(&record)?;
                }
            }
        }
    }
    Ok(())
}

/// Converged synchronous static ranks of `g` at the plan's tolerance.
fn seed_ranks(g: &GraphSnapshot, base: &EngineConfig) -> Result<RankVector> {
    let cfg = EngineConfig {
        mode: Mode::Synchronous,
        ..base.clone()
    };
    Ok(Engine::new(cfg)?.static_pagerank(g)?.ranks)
}

fn error_records(plan: &ExperimentPlan, key: &CellKey<'_>, message: &str) -> Vec<ExperimentRecord> {
    let mut out = Vec::new();
    for &threads in &plan.threads {
        for &mode in &plan.modes {
            for &approach in &plan.approaches {
                let mut r = ExperimentRecord::blank(key, approach, mode, threads);
                r.error = Some(message.to_owned());
                out.push(r);
            }
        }
    }
    out
}

struct PreparedCell {
    batch: BatchUpdate,
    curr: GraphSnapshot,
    preprocess_s: f64,
    reference: RankVector,
}

fn prepare_cell(
    plan: &ExperimentPlan,
    key: &CellKey<'_>,
    prev: &GraphSnapshot,
) -> Result<PreparedCell> {
    let spec = BatchSpec::new(key.fraction, key.insert_ratio, key.seed);
    let batch = generate_batch(prev, &spec)?;
    let start = Instant::now();
    let curr = apply_batch_with(prev, &batch, plan.policy)?;
    let preprocess_s = start.elapsed().as_secs_f64();
    let reference = reference_ranks_with(&curr, &plan.engine)?;
    Ok(PreparedCell {
        batch,
        curr,
        preprocess_s,
        reference,
    })
}

fn run_cell(
    plan: &ExperimentPlan,
    engines: &[(usize, Mode, Engine)],
    key: &CellKey<'_>,
    prev: &GraphSnapshot,
    seed: &RankVector,
) -> Vec<ExperimentRecord> {
    let cell = match prepare_cell(plan, key, prev) {
        Ok(cell) => cell,
        Err(e) => return error_records(plan, key, &e.to_string()),
    };
    let verify = plan.verify && cell.curr.n() <= VERIFY_MAX_VERTICES;
    let mut out = Vec::new();
    for (threads, mode, engine) in engines {
        let mut runs: Vec<(Approach, Result<RunResult>)> = plan
            .approaches
            .iter()
            .map(|&a| (a, engine.run(a, prev, &cell.curr, &cell.batch, seed)))
            .collect();
        if verify {
            verify_runs(&mut runs, seed);
        }
        for (approach, run) in runs {
            let mut record = ExperimentRecord::blank(key, approach, *mode, *threads);
            let filled = run.and_then(|r| {
                let ranks = plan.keep_ranks.then(|| r.ranks.clone());
                fill_record(&mut record, r, &cell)?;
                record.ranks = ranks;
                Ok(())
            });
            if let Err(e) = filled {
                record.error = Some(e.to_string());
            }
            out.push(record);
        }
    }
    out
}

fn fill_record(record: &mut ExperimentRecord, run: RunResult, cell: &PreparedCell) -> Result<()> {
    let n = cell.curr.n();
    record.elapsed_s = run.elapsed;
    record.preprocess_s = cell.preprocess_s;
    record.iterations = run.iterations;
    record.rank_updates = run.rank_updates;
    record.affected_final = run.affected_final;
    record.affected_fraction = run.affected_final as f64 / n as f64;
    record.l1_error = l1_error(&run.ranks, &cell.reference)?;
    record.converged = run.converged;
    Ok(())
}

/// Turns runs that break the skip contract or containment into errors.
fn verify_runs(runs: &mut [(Approach, Result<RunResult>)], seed: &RankVector) {
    for (approach, run) in runs.iter_mut() {
        if let Ok(r) = run {
            if let Err(e) = check_skip_contract(*approach, r, seed) {
                *run = Err(e);
            }
        }
    }
    let flags_of = |runs: &[(Approach, Result<RunResult>)], which: Approach| {
        runs.iter()
            .find(|(a, r)| *a == which && r.is_ok())
            .and_then(|(_, r)| r.as_ref().ok()?.flags.clone())
    };
    if let (Some(frontier), Some(traversal)) = (
        flags_of(runs, Approach::Frontier),
        flags_of(runs, Approach::Traversal),
    ) {
        if !frontier.is_subset_of(&traversal) {
            for (a, run) in runs.iter_mut() {
                if *a == Approach::Frontier {
                    *run = Err(Error::contract("frontier affected set escapes traversal's"));
                }
            }
        }
    }
}

fn check_skip_contract(approach: Approach, run: &RunResult, seed: &RankVector) -> Result<()> {
    let Some(flags) = &run.flags else {
        return Ok(());
    };
    let bad = flags
        .as_bytes()
        .iter()
        .zip(run.ranks.iter().zip(seed.iter()))
        .position(|(&f, (r, s))| f == 0 && r.to_bits() != s.to_bits());
    match bad {
        Some(v) => Err(Error::contract(format!(
            "{approach}: unflagged vertex {v} changed rank"
        ))),
        None => Ok(()),
    }
}

/// Settings for [`run_single`].
#[derive(Clone, Debug)]
pub struct SingleRun {
    pub graph: GraphSource,
    pub approach: Approach,
    /// Explicit batch; when `None` one is drawn from `spec`.
    pub batch: Option<BatchUpdate>,
    pub spec: BatchSpec,
    pub engine: EngineConfig,
    pub policy: BatchPolicy,
}

/// Executes one `(graph, batch, approach)` run end to end. Errors are
/// returned rather than recorded; the record keeps the final ranks.
pub fn run_single(run: &SingleRun) -> Result<ExperimentRecord> {
    let prev = run.graph.load()?;
    let seed = if run.approach.is_dynamic() {
        seed_ranks(&prev, &run.engine)?
    } else {
        RankVector::default()
    };
    let key = CellKey {
        graph: &run.graph.name(),
        fraction: run.spec.fraction,
        insert_ratio: run.spec.insert_ratio,
        repetition: 0,
        seed: run.spec.seed,
    };
    let batch = match &run.batch {
        Some(b) => b.clone(),
        None => generate_batch(&prev, &run.spec)?,
    };
    let start = Instant::now();
    let curr = apply_batch_with(&prev, &batch, run.policy)?;
    let preprocess_s = start.elapsed().as_secs_f64();
    let reference = reference_ranks_with(&curr, &run.engine)?;
    let cell = PreparedCell {
        batch,
        curr,
        preprocess_s,
        reference,
    };

    let engine = Engine::new(run.engine.clone())?;
    let result = engine.run(run.approach, &prev, &cell.curr, &cell.batch, &seed)?;
    let ranks = result.ranks.clone();
    let mut record =
        ExperimentRecord::blank(&key, run.approach, run.engine.mode, run.engine.threads);
    fill_record(&mut record, result, &cell)?;
    record.ranks = Some(ranks);
    Ok(record)
}

/// Frontier runs repeated for every thread count of `plan`. Only the
/// approach list of `plan` is ignored.
pub fn scaling_sweep(plan: &ExperimentPlan) -> Result<Vec<ExperimentRecord>> {
    let plan = ExperimentPlan {
        approaches: vec![Approach::Frontier],
        ..plan.clone()
    };
    run_experiment(&plan)
}

/// Elapsed time and speedup for one thread count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub mode: Mode,
    pub threads: usize,
    /// Geometric mean of elapsed seconds over graphs and repetitions.
    pub elapsed_s: f64,
    /// Baseline elapsed time divided by this one. The baseline is the
    /// smallest thread count in the sweep.
    pub speedup: f64,
}

/// Speedups of frontier runs relative to the smallest thread count, per mode.
pub fn speedups(records: &[ExperimentRecord]) -> Vec<ScalingPoint> {
    let mut samples: BTreeMap<(Mode, usize), Vec<f64>> = BTreeMap::new();
    for r in records
        .iter()
        .filter(|r| !r.is_error() && r.approach == Approach::Frontier)
    {
        samples
            .entry((r.mode, r.threads))
            .or_default()
            .push(r.elapsed_s.max(1e-12));
    }
    let mut points: Vec<ScalingPoint> = Vec::new();
    for ((mode, threads), xs) in samples {
        let elapsed_s = summary_mean(&xs);
        let baseline = match points.iter().find(|p| p.mode == mode) {
            Some(first) => first.elapsed_s,
            None => elapsed_s,
        };
        points.push(ScalingPoint {
            mode,
            threads,
            elapsed_s,
            speedup: baseline / elapsed_s,
        });
    }
    points
}

/// Streams records as CSV, flushing after every row.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> Result<Self> {
        let mut writer = csv::Writer::from_writer(inner);
        writer.write_record(CSV_HEADER)?;
        writer.flush().map_err(csv::Error::from)?;
        Ok(Self { writer })
    }

    pub fn write(&mut self, record: &ExperimentRecord) -> Result<()> {
        self.writer.write_record(record.csv_fields())?;
        self.writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_summary(&mut self, row: &SummaryRow) -> Result<()> {
        self.writer.write_record(row.csv_fields())?;
        self.writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Build and host details stored alongside JSON results.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub rng: String,
    pub engine: EngineConfig,
    pub frontier_tolerance: f64,
    pub plan: Option<ExperimentPlan>,
    pub host: HostInfo,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HostInfo {
    pub os: String,
    pub arch: String,
    pub hardware_threads: usize,
}

impl Metadata {
    pub fn new(engine: &EngineConfig, plan: Option<&ExperimentPlan>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            rng: RNG_ALGORITHM.to_owned(),
            engine: engine.clone(),
            frontier_tolerance: engine.frontier_tolerance(),
            plan: plan.cloned(),
            host: HostInfo {
                os: std::env::consts::OS.to_owned(),
                arch: std::env::consts::ARCH.to_owned(),
                hardware_threads: crate::engine::default_threads(),
            },
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    metadata: &'a Metadata,
    records: &'a [ExperimentRecord],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<&'a [SummaryRow]>,
}

/// Writes `{"metadata": …, "records": […], "summary": […]}`.
pub fn write_json<W: Write>(
    w: W,
    metadata: &Metadata,
    records: &[ExperimentRecord],
    summary: Option<&[SummaryRow]>,
) -> Result<()> {
    serde_json::to_writer_pretty(
        w,
        &JsonReport {
            metadata,
            records,
            summary,
        },
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l1_examples() {
        assert_eq!(l1_error(&[0.1, 0.2], &[0.1, 0.2]).unwrap(), 0.0);
        assert!((l1_error(&[0.5, 0.5], &[0.6, 0.4]).unwrap() - 0.2).abs() < 1e-15);
        assert!(matches!(
            l1_error(&[1.0], &[1.0, 0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn geometric_mean_examples() {
        assert!((geometric_mean(&[4.0]).unwrap() - 4.0).abs() < 1e-12);
        assert!((geometric_mean(&[1.0, 100.0]).unwrap() - 10.0).abs() < 1e-12);
        assert!((geometric_mean(&[2.0, 8.0, 4.0]).unwrap() - 4.0).abs() < 1e-12);
        assert!(geometric_mean(&[]).is_err());
        assert!(geometric_mean(&[1.0, 0.0]).is_err());
        assert!(geometric_mean(&[1.0, -2.0]).is_err());
    }

    #[test]
    fn graph_source_parsing() {
        assert_eq!(
            "random:100:500:3".parse::<GraphSource>().unwrap(),
            GraphSource::Random {
                n: 100,
                m: 500,
                seed: 3
            }
        );
        assert_eq!(
            "random:10:20".parse::<GraphSource>().unwrap(),
            GraphSource::Random {
                n: 10,
                m: 20,
                seed: 0
            }
        );
        assert!("random:10".parse::<GraphSource>().is_err());
        let file = "data/web.mtx".parse::<GraphSource>().unwrap();
        assert_eq!(file.name(), "web");
    }

    #[test]
    fn plan_validation() {
        let plan = ExperimentPlan::default();
        assert!(plan.validate().is_err());
        let plan = ExperimentPlan {
            graphs: vec![GraphSource::Random {
                n: 10,
                m: 20,
                seed: 0,
            }],
            ..ExperimentPlan::default()
        };
        plan.validate().unwrap();
        assert!(ExperimentPlan {
            fractions: vec![],
            ..plan.clone()
        }
        .validate()
        .is_err());
        assert!(ExperimentPlan {
            repetitions: 0,
            ..plan.clone()
        }
        .validate()
        .is_err());
        assert!(ExperimentPlan {
            threads: vec![0],
            ..plan
        }
        .validate()
        .is_err());
    }

    #[test]
    fn summary_uses_geometric_mean_across_graphs() {
        let mut records = Vec::new();
        for (graph, elapsed) in [("a", [1.0, 3.0]), ("b", [8.0, 8.0]), ("c", [4.0, 4.0])] {
            for (rep, e) in elapsed.into_iter().enumerate() {
                let key = CellKey {
                    graph,
                    fraction: 1e-3,
                    insert_ratio: 1.0,
                    repetition: rep,
                    seed: 0,
                };
                let mut r =
                    ExperimentRecord::blank(&key, Approach::Frontier, Mode::Asynchronous, 1);
                r.elapsed_s = e;
                r.preprocess_s = 1.0;
                r.l1_error = 0.0;
                r.affected_fraction = 0.5;
                r.converged = true;
                records.push(r);
            }
        }
        let rows = summarize(&records);
        assert_eq!(rows.len(), 1);
        // Per-graph means 2, 8, 4 give a geometric mean of 4.
        assert!((rows[0].elapsed_s - 4.0).abs() < 1e-12);
        assert_eq!(rows[0].graphs, 3);
        assert_eq!(rows[0].l1_error, 0.0);
        assert!(rows[0].converged);
    }

    #[test]
    fn speedup_is_self_relative() {
        let key = CellKey {
            graph: "g",
            fraction: 1e-4,
            insert_ratio: 1.0,
            repetition: 0,
            seed: 0,
        };
        let mk = |threads, elapsed| {
            let mut r =
                ExperimentRecord::blank(&key, Approach::Frontier, Mode::Asynchronous, threads);
            r.elapsed_s = elapsed;
            r
        };
        let points = speedups(&[mk(1, 2.0), mk(2, 1.0), mk(4, 0.8)]);
        assert_eq!(points.len(), 3);
        assert_eq!(points[0].speedup, 1.0);
        assert_eq!(points[1].speedup, 2.0);
        assert_eq!(speedups(&[mk(1, 0.3)])[0].speedup, 1.0);
    }

    #[test]
    fn error_rows_in_csv() {
        let key = CellKey {
            graph: "g",
            fraction: 0.1,
            insert_ratio: 1.0,
            repetition: 0,
            seed: 0,
        };
        let mut r = ExperimentRecord::blank(&key, Approach::Static, Mode::Synchronous, 2);
        r.error = Some("boom".into());
        let mut buf = Vec::new();
        CsvSink::new(&mut buf).unwrap().write(&r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "g,static,sync,0.1,1,0,2,0,,,,,,,,error"
        );
    }
}
