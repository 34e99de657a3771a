//! Backend comparison: the rayon data-parallel kernels against the
//! sequential fallback.
//!
//! Run `cargo bench` for the parallel build (measured on pools of 1 and all
//! cores) and `cargo bench --no-default-features` for the sequential
//! fallback; criterion's saved baselines make the two directly comparable.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use colorder::bench::{all_strategies, run_benchmark, Baseline, BenchConfig, BenchInput};
use colorder::gen;
use colorder::metrics::{self, ClosenessMode, MetricConfig, PageRankParams};
use colorder::Graph;

fn workload_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("rgg-8k", gen::random_geometric(8_000, 0.02, 11)),
        ("ba-8k", gen::barabasi_albert(8_000, 4, 12)),
    ]
}

#[cfg(feature = "parallel")]
fn run_backends<F: Fn() + Sync>(c: &mut Criterion, group: &str, param: &str, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for threads in [1, num_cpus()] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        g.bench_with_input(
            BenchmarkId::new(format!("rayon-{threads}t"), param),
            &(),
            |b, _| b.iter(|| pool.install(&f)),
        );
    }
    g.finish();
}

#[cfg(not(feature = "parallel"))]
fn run_backends<F: Fn() + Sync>(c: &mut Criterion, group: &str, param: &str, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_with_input(BenchmarkId::new("sequential", param), &(), |b, _| {
        b.iter(&f)
    });
    g.finish();
}

#[cfg(feature = "parallel")]
fn num_cpus() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn bench_metrics(c: &mut Criterion) {
    for (name, g) in workload_graphs() {
        run_backends(c, "closeness_exact", name, || {
            black_box(metrics::closeness_exact(&g));
        });
        run_backends(c, "nbor3", name, || {
            black_box(metrics::k_neighborhood(&g, 3));
        });
        run_backends(c, "pagerank_20", name, || {
            black_box(metrics::pagerank(&g, &PageRankParams::default()));
        });
        run_backends(c, "closeness_sampled_100", name, || {
            black_box(metrics::closeness_sampled(&g, 100, 1).unwrap());
        });
    }
}

fn bench_full_sweep(c: &mut Criterion) {
    let inputs: Vec<BenchInput> = (0..4)
        .map(|seed| BenchInput {
            name: format!("rgg-{seed}"),
            graph: gen::random_geometric(3_000, 0.03, seed),
            chi: None,
        })
        .collect();
    let config = BenchConfig {
        metric: MetricConfig {
            closeness: ClosenessMode::Sampled { samples: 100, seed: 1 },
            ..MetricConfig::default()
        },
        ..BenchConfig::default()
    };
    let strategies = all_strategies(None);
    run_backends(c, "strategy_sweep", "rgg-3k-x4", || {
        black_box(run_benchmark(&inputs, &strategies, Baseline::Degree, &config).unwrap());
    });
}

criterion_group!(benches, bench_metrics, bench_full_sweep);
criterion_main!(benches);
