//! `dynrank` command-line tool.
//!
//! Exit status: 0 on success (a run that hits the iteration cap still
//! counts), 1 for I/O, parse and data errors, 2 for invalid arguments or
//! other contract violations.

mod args;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use dynrank_core::engine::default_threads;
use dynrank_core::harness::{
    run_experiment_with, run_single, scaling_sweep, speedups, summarize, write_json, CsvSink,
    ExperimentPlan, ExperimentRecord, GraphSource, Metadata, SingleRun,
};
use dynrank_core::{generate_batch, Approach, BatchSpec, BatchUpdate, Error, Mode, Result};

use args::{
    BenchArgs, Cli, Command, Format, GenBatchArgs, RunArgs, ScaleArgs, StatsArgs, StatsFormat,
};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Stats(a) => stats(&a),
        Command::Run(a) => run(&a),
        Command::Bench(a) => bench(&a),
        Command::Scale(a) => scale(&a),
        Command::GenBatch(a) => gen_batch(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_contract_violation() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn source(spec: &str, base: u32) -> Result<GraphSource> {
    Ok(match spec.parse()? {
        GraphSource::File { path, .. } => GraphSource::File { path, base },
        random => random,
    })
}

/// Opens `--out`, or standard output when absent.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(mut w: Box<dyn Write>, path: Option<&Path>) -> Result<()> {
    w.flush()
        .map_err(io_err(path.unwrap_or(Path::new("<stdout>"))))
}

fn stats(a: &StatsArgs) -> Result<ExitCode> {
    let g = source(&a.graph.graph, a.graph.base)?.load()?;
    if g.n() == 0 {
        eprintln!("warning: graph has no vertices");
    }
    match a.format {
        StatsFormat::Text => println!("|V|={} |E|={} Davg={:.2}", g.n(), g.m(), g.average_degree()),
        StatsFormat::Json => println!(
            "{}",
            serde_json::json!({ "n": g.n(), "m": g.m(), "average_degree": g.average_degree() })
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(a: &RunArgs) -> Result<ExitCode> {
    let batch = match &a.batch {
        Some(p) => Some(BatchUpdate::read_from(BufReader::new(
            File::open(p).map_err(io_err(p))?,
        ))?),
        None => None,
    };
    let threads = a.threads.unwrap_or_else(default_threads);
    let single = SingleRun {
        graph: source(&a.graph.graph, a.graph.base)?,
        approach: a.approach,
        batch,
        spec: BatchSpec::new(a.fraction, a.insert_ratio, a.seed),
        engine: a.engine.config(a.mode, threads),
        policy: a.policy.policy(),
    };
    let record = run_single(&single)?;
    if !record.converged {
        eprintln!(
            "warning: no convergence within {} iterations",
            a.engine.max_iters
        );
    }
    let mut w = output(a.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &record)?;
    writeln!(w).map_err(io_err(Path::new("<stdout>")))?;
    finish(w, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn log_record(r: &ExperimentRecord) {
    match &r.error {
        Some(e) => eprintln!(
            "{} {} {} f={} rep={} t={}: FAILED {e}",
            r.graph, r.approach, r.mode, r.fraction, r.repetition, r.threads
        ),
        None => eprintln!(
            "{} {} {} f={} rep={} t={}: {:.6}s it={} l1={:.3e}",
            r.graph,
            r.approach,
            r.mode,
            r.fraction,
            r.repetition,
            r.threads,
            r.elapsed_s,
            r.iterations,
            r.l1_error
        ),
    }
}

fn plan_from(
    graphs: &[String],
    base: u32,
    modes: &[Mode],
    threads: Vec<usize>,
    engine: &args::EngineArgs,
) -> Result<ExperimentPlan> {
    let graphs = graphs
        .iter()
        .map(|g| source(g, base))
        .collect::<Result<Vec<_>>>()?;
    let first = threads.first().copied().unwrap_or(1);
    let mode = modes.first().copied().unwrap_or_default();
    Ok(ExperimentPlan {
        graphs,
        modes: modes.to_vec(),
        threads,
        engine: engine.config(mode, first),
        ..ExperimentPlan::default()
    })
}

fn bench(a: &BenchArgs) -> Result<ExitCode> {
    let threads = a.threads.clone().unwrap_or_else(|| vec![default_threads()]);
    let plan = ExperimentPlan {
        approaches: a.approach.clone(),
        fractions: a.fractions.clone(),
        insert_ratio: a.insert_ratio,
        repetitions: a.reps,
        seed: a.seed,
        policy: a.policy.policy(),
        verify: !a.no_verify,
        ..plan_from(&a.graphs, a.base, &a.mode, threads, &a.engine)?
    };
    plan.validate()?;

    let mut records = Vec::new();
    let mut w = output(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            let mut sink = CsvSink::new(&mut w)?;
            run_experiment_with(&plan, |r| {
                log_record(r);
                records.push(r.clone());
                sink.write(r)
            })?;
            if a.summary {
                for row in summarize(&records) {
                    sink.write_summary(&row)?;
                }
            }
        }
        Format::Json => {
            run_experiment_with(&plan, |r| {
                log_record(r);
                records.push(r.clone());
                Ok(())
            })?;
            let summary = a.summary.then(|| summarize(&records));
            write_json(
                &mut w,
                &Metadata::new(&plan.engine, Some(&plan)),
                &records,
                summary.as_deref(),
            )?;
            writeln!(w).map_err(io_err(Path::new("<stdout>")))?;
        }
    }
    finish(w, a.out.as_deref())?;

    let failed = records.iter().filter(|r| r.is_error()).count();
    if failed > 0 {
        eprintln!("error: {failed} of {} runs failed", records.len());
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn scale(a: &ScaleArgs) -> Result<ExitCode> {
    let plan = ExperimentPlan {
        approaches: vec![Approach::Frontier],
        fractions: vec![a.fraction],
        insert_ratio: a.insert_ratio,
        repetitions: a.reps,
        seed: a.seed,
        policy: a.policy.policy(),
        verify: false,
        ..plan_from(&a.graphs, a.base, &a.mode, a.threads.clone(), &a.engine)?
    };
    plan.validate()?;
    let records = scaling_sweep(&plan)?;
    records.iter().for_each(log_record);
    let points = speedups(&records);

    let mut w = output(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["mode", "threads", "elapsed_s", "speedup"])?;
            for p in &points {
                csv.write_record([
                    p.mode.to_string(),
                    p.threads.to_string(),
                    p.elapsed_s.to_string(),
                    p.speedup.to_string(),
                ])?;
            }
            csv.flush().map_err(csv::Error::from)?;
        }
        Format::Json => {
            let report = serde_json::json!({
                "metadata": Metadata::new(&plan.engine, Some(&plan)),
                "records": records,
                "speedups": points,
            });
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w).map_err(io_err(Path::new("<stdout>")))?;
        }
    }
    finish(w, a.out.as_deref())?;

    let failed = records.iter().filter(|r| r.is_error()).count();
    if failed > 0 {
        eprintln!("error: {failed} of {} runs failed", records.len());
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn gen_batch(a: &GenBatchArgs) -> Result<ExitCode> {
    let g = source(&a.graph.graph, a.graph.base)?.load()?;
    let batch = generate_batch(&g, &BatchSpec::new(a.fraction, a.insert_ratio, a.seed))?;
    let mut w = output(a.out.as_deref())?;
    batch
        .write_to(&mut w)
        .map_err(io_err(a.out.as_deref().unwrap_or(Path::new("<stdout>"))))?;
    finish(w, a.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
