use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dynrank_bench::Fixture;
use dynrank_core::{mark_initial_affected, mark_reachable, Approach, Engine, EngineConfig, Mode};

fn approaches(c: &mut Criterion) {
    let fx = Fixture::new(20_000, 160_000, 1e-4, 0.8);
    let mut group = c.benchmark_group("approach");
    group.sample_size(10);
    for mode in Mode::ALL {
        let engine = Engine::new(EngineConfig::default().with_mode(mode)).unwrap();
        for approach in Approach::ALL {
            group.bench_with_input(
                BenchmarkId::new(approach.as_str(), mode),
                &approach,
                |b, &a| {
                    b.iter(|| {
                        engine
                            .run(a, &fx.prev, &fx.curr, &fx.batch, &fx.seed)
                            .unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn batch_size(c: &mut Criterion) {
    let mut group = c.benchmark_group("frontier_batch_fraction");
    group.sample_size(10);
    let engine = Engine::new(EngineConfig::default()).unwrap();
    for fraction in [1e-5, 1e-4, 1e-3, 1e-2] {
        let fx = Fixture::new(20_000, 160_000, fraction, 1.0);
        group.bench_function(BenchmarkId::from_parameter(fraction), |b| {
            b.iter(|| {
                engine
                    .dynamic_frontier_pagerank(&fx.prev, &fx.curr, &fx.batch, &fx.seed)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn marking(c: &mut Criterion) {
    let fx = Fixture::new(50_000, 400_000, 1e-3, 0.8);
    let mut group = c.benchmark_group("marking");
    group.bench_function("initial", |b| {
        b.iter(|| mark_initial_affected(&fx.prev, &fx.curr, &fx.batch).unwrap())
    });
    group.bench_function("reachable", |b| {
        b.iter(|| mark_reachable(&fx.prev, &fx.curr, &fx.batch).unwrap())
    });
    group.finish();
}

criterion_group!(benches, approaches, batch_size, marking);
criterion_main!(benches);
