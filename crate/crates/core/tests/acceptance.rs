//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `--nocapture` to see them).
//!
//! Criteria 5 and 6 run against downloaded corpora when
//! `COLORDER_LARGE_CORPUS` / `COLORDER_SMALL_CORPUS` point at directories
//! of `.mtx` files (see `colorder fetch`); otherwise they run on the pinned
//! synthetic stand-in corpora. With the full recovered large corpus,
//! setting `COLORDER_FULL_TABLE1=1` additionally checks the published
//! geometric means at +-0.05.

use std::time::Instant;

use colorder::bench::{
    all_strategies, load_corpus, prepare_inputs, run_benchmark, Baseline, BenchConfig, BenchInput,
    BenchReport,
};
use colorder::coloring::{greedy_color, verify};
use colorder::exact::{brute_force_chromatic, chromatic_exact, Budget};
use colorder::gen;
use colorder::graph::Graph;
use colorder::metrics::{self, ClosenessMode, MetricConfig, PageRankParams};
use colorder::ordering::{OrderingSpec, Permutation, Strategy};

const SINGLE_STRATEGIES: [&str; 7] = [
    "degree",
    "nbor2",
    "nbor3",
    "closeness",
    "clustering",
    "pagerank",
    "random",
];

fn geomean_of(report: &BenchReport, label: &str) -> f64 {
    report
        .aggregate_for(label)
        .unwrap_or_else(|| panic!("strategy {label} missing from report"))
        .geomean_ratio
        .unwrap_or_else(|| panic!("strategy {label} has no aggregate"))
}

/// Graphs for criteria 5/6: a downloaded corpus directory when the
/// environment names one, the pinned synthetic corpus otherwise.
fn corpus_or_synthetic(
    env_var: &str,
    synthetic: fn() -> Vec<(String, Graph)>,
) -> (Vec<BenchInput>, bool) {
    if let Ok(dir) = std::env::var(env_var) {
        let (entries, warnings) = load_corpus(std::path::Path::new(&dir))
            .unwrap_or_else(|e| panic!("cannot read {env_var}={dir}: {e}"));
        for w in warnings {
            eprintln!("warning: {w}");
        }
        assert!(!entries.is_empty(), "{env_var}={dir} holds no graphs");
        let (inputs, warnings) = prepare_inputs(&entries, Baseline::Degree, Budget::default());
        for w in warnings {
            eprintln!("warning: {w}");
        }
        (inputs, true)
    } else {
        let inputs = synthetic()
            .into_iter()
            .map(|(name, graph)| BenchInput {
                name,
                graph,
                chi: None,
            })
            .collect();
        (inputs, false)
    }
}

#[test]
fn acceptance_1_correctness_suite() {
    let start = Instant::now();
    let config = MetricConfig::default();
    let strategies = all_strategies(None);
    assert_eq!(strategies.len(), 9);

    let mut colorings = 0usize;
    for i in 0..200u64 {
        let n = 20 + (i as usize * 7) % 181; // 20..=200
        let p = [0.05, 0.2, 0.5][i as usize % 3];
        let g = gen::gnp(n, p, 10_000 + i);
        let set = metrics::MetricSet::compute(&g, &config, false, false).unwrap();
        for spec in &strategies {
            let spec = if spec.strategy == Strategy::Random {
                OrderingSpec::random(i)
            } else {
                spec.clone()
            };
            let order = colorder::ordering::permutation_for(&spec, &set).unwrap();
            let coloring = greedy_color(&g, &order, 1).unwrap();
            assert!(verify(&g, &coloring, 1), "graph {i}, strategy {}", spec.label());
            assert!(
                coloring.num_colors() as usize <= g.max_degree() + 1,
                "graph {i}, strategy {}: {} colors > max degree {} + 1",
                spec.label(),
                coloring.num_colors(),
                g.max_degree()
            );
            colorings += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "correctness suite took {elapsed:?}, limit 30 s"
    );
    println!(
        "ACCEPTANCE 1 (correctness suite): PASS - {colorings} colorings over 200 graphs, all proper and within max-degree+1, in {:.1} s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_2_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0;
    for i in 0..150u64 {
        let n = 4 + (i as usize % 7); // 4..=10
        let p = [0.2, 0.5, 0.8][i as usize % 3];
        let g = gen::gnp(n, p, 20_000 + i);
        let expected = brute_force_chromatic(&g).unwrap();
        let result = chromatic_exact(&g, Budget::default());
        assert!(!result.timed_out, "graph {i} timed out");
        assert_eq!(result.chi, expected, "graph {i}: solver {} vs oracle {expected}", result.chi);
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "oracle equivalence took {elapsed:?}, limit 2 min"
    );
    println!(
        "ACCEPTANCE 2 (oracle equivalence): PASS - {checked}/150 solver results match brute force, in {:.1} s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_3_optimal_order_recovery() {
    // 100 small graphs with known chromatic number.
    let mut graphs: Vec<Graph> = Vec::new();
    for i in 0..44u64 {
        let n = 20 + (i as usize % 4) * 10;
        let p = [0.1, 0.2, 0.3][i as usize % 3];
        graphs.push(gen::gnp(n, p, 30_000 + i));
    }
    for i in 0..20u64 {
        graphs.push(gen::random_geometric(60 + (i as usize % 3) * 20, 0.22, 31_000 + i));
    }
    for i in 0..12u64 {
        graphs.push(gen::barabasi_albert(40 + (i as usize % 4) * 15, 2, 32_000 + i));
    }
    for (r, c) in [(5, 8), (6, 7), (7, 9), (8, 8), (6, 11), (9, 7)] {
        graphs.push(gen::grid(r, c, true, false));
    }
    for k in 3..=8 {
        graphs.push(gen::crown(k));
    }
    for n in [5, 7, 9, 11, 6, 8] {
        graphs.push(gen::cycle(n));
    }
    for n in [4, 5, 6, 7] {
        graphs.push(gen::complete(n));
    }
    graphs.push(gen::petersen());
    graphs.push(gen::complete_bipartite(7, 9));
    assert_eq!(graphs.len(), 100);

    let mut recovered = 0;
    for (i, g) in graphs.iter().enumerate() {
        let exact = chromatic_exact(g, Budget::default());
        assert!(!exact.timed_out, "graph {i} timed out");
        let mut order: Vec<u32> = (0..g.n() as u32).collect();
        order.sort_by_key(|&v| (exact.witness.color(v), v));
        let rerun = greedy_color(g, &Permutation::new(order).unwrap(), 1).unwrap();
        assert_eq!(
            rerun.num_colors(),
            exact.chi,
            "graph {i}: class-sorted greedy used {} colors, chi = {}",
            rerun.num_colors(),
            exact.chi
        );
        recovered += 1;
    }
    println!(
        "ACCEPTANCE 3 (optimal-order recovery): PASS - {recovered}/100 graphs recover chi under class-sorted greedy"
    );
}

#[test]
fn acceptance_4_adversarial_crown_gap() {
    for k in 3..=8usize {
        let g = gen::crown(k);
        let order: Vec<u32> = (0..k as u32).flat_map(|i| [i, k as u32 + i]).collect();
        let greedy = greedy_color(&g, &Permutation::new(order).unwrap(), 1).unwrap();
        assert_eq!(
            greedy.num_colors() as usize, k,
            "crown {k}: interleaved greedy should use {k} colors"
        );
        let exact = chromatic_exact(&g, Budget::default());
        assert!(!exact.timed_out);
        assert_eq!(exact.chi, 2, "crown graphs are bipartite");
    }
    println!(
        "ACCEPTANCE 4 (adversarial gap): PASS - crowns k=3..8 force k colors under the interleaved order while chi = 2"
    );
}

#[test]
fn acceptance_5_table1_directional() {
    let start = Instant::now();
    let (inputs, _from_disk) =
        corpus_or_synthetic("COLORDER_LARGE_CORPUS", gen::synthetic_large_corpus);
    assert!(
        inputs.len() >= 30,
        "large corpus has only {} graphs, need at least 30",
        inputs.len()
    );

    let config = BenchConfig {
        metric: MetricConfig {
            pagerank: PageRankParams::default(),
            closeness: ClosenessMode::Sampled { samples: 100, seed: 1 },
        },
        ..BenchConfig::default()
    };
    let report = run_benchmark(&inputs, &all_strategies(None), Baseline::Degree, &config).unwrap();

    let degree = geomean_of(&report, "degree");
    let closeness = geomean_of(&report, "closeness");
    let random = geomean_of(&report, "random");
    assert_eq!(degree, 1.0, "degree is its own baseline");
    assert!(closeness < 1.0, "closeness geomean {closeness} should beat the degree baseline");
    assert!(random >= 1.05, "random geomean {random} should be at least 1.05");
    for label in SINGLE_STRATEGIES {
        let gm = geomean_of(&report, label);
        assert!(
            closeness <= gm,
            "closeness {closeness} should be the best single strategy, but {label} = {gm}"
        );
    }

    // Published geometric means, checked at +-0.05 only on the full
    // recovered corpus (corpus identity and alpha are under-specified).
    if std::env::var("COLORDER_FULL_TABLE1").is_ok() {
        for (label, published) in [
            ("degree", 1.00),
            ("nbor2", 1.02),
            ("nbor3", 1.07),
            ("closeness", 0.97),
            ("clustering", 1.03),
            ("pagerank", 1.02),
            ("random", 1.08),
        ] {
            let gm = geomean_of(&report, label);
            assert!(
                (gm - published).abs() <= 0.05,
                "{label}: geomean {gm} vs published {published} (tolerance 0.05)"
            );
        }
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1800.0,
        "large benchmark took {elapsed:?}, limit 30 min"
    );
    println!(
        "ACCEPTANCE 5 (directional large-corpus reproduction): PASS - {} graphs, closeness {closeness:.4} < 1.0 = degree, random {random:.4} >= 1.05, closeness best single, in {:.0} s",
        report.per_graph.len(),
        elapsed.as_secs_f64()
    );
}

#[test]
fn acceptance_6_table2_directional() {
    let (mut inputs, from_disk) =
        corpus_or_synthetic("COLORDER_SMALL_CORPUS", gen::synthetic_small_corpus);
    if !from_disk {
        for input in &mut inputs {
            let result = chromatic_exact(&input.graph, Budget::default());
            if !result.timed_out {
                input.chi = Some(result.chi);
            }
        }
    } else {
        // Disk corpora get chi from the sidecar cache / fresh solves.
        let dir = std::env::var("COLORDER_SMALL_CORPUS").unwrap();
        let (entries, _) = load_corpus(std::path::Path::new(&dir)).unwrap();
        let (prepared, warnings) = prepare_inputs(&entries, Baseline::Optimal, Budget::default());
        for w in warnings {
            eprintln!("warning: {w}");
        }
        inputs = prepared;
    }
    let solved = inputs.iter().filter(|i| i.chi.is_some()).count();
    assert!(solved >= 60, "only {solved} graphs solved exactly, need at least 60");

    let config = BenchConfig::default();
    let report = run_benchmark(&inputs, &all_strategies(None), Baseline::Optimal, &config).unwrap();

    let closeness = geomean_of(&report, "closeness");
    for agg in &report.aggregates {
        let gm = agg.geomean_ratio.unwrap();
        assert!(
            (1.0..=1.6).contains(&gm),
            "{}: geomean {gm} outside [1.0, 1.6]",
            agg.strategy
        );
    }
    for label in ["degree", "nbor2", "nbor3", "clustering", "pagerank", "random"] {
        let gm = geomean_of(&report, label);
        assert!(
            closeness < gm,
            "closeness {closeness} should beat {label} ({gm})"
        );
    }
    let weighted_label = report
        .strategies
        .iter()
        .find(|s| s.starts_with("weighted"))
        .unwrap();
    let weighted = geomean_of(&report, weighted_label);
    assert!(
        weighted <= closeness,
        "published weight vector ({weighted}) should be no worse than closeness ({closeness})"
    );

    println!(
        "ACCEPTANCE 6 (directional optimal-baseline reproduction): PASS - {solved} graphs solved, closeness {closeness:.4} best single, weighted {weighted:.4} <= closeness, all in [1.0, 1.6]"
    );
}

#[test]
fn acceptance_7_sampled_closeness_fidelity() {
    // Rank fidelity on 20 graphs up to 2000 vertices.
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for i in 0..7u64 {
        let n = 500 + (i as usize % 4) * 400;
        let radius = (9.0 / (n as f64 * std::f64::consts::PI)).sqrt();
        graphs.push((format!("rgg{i}"), gen::random_geometric(n, radius, 40_000 + i)));
    }
    for i in 0..7u64 {
        let n = 400 + (i as usize % 4) * 500;
        graphs.push((format!("ba{i}"), gen::barabasi_albert(n, 3, 41_000 + i)));
    }
    for i in 0..6u64 {
        let n = 600 + (i as usize % 3) * 450;
        graphs.push((format!("gnp{i}"), gen::gnp(n, 8.0 / n as f64, 42_000 + i)));
    }
    assert_eq!(graphs.len(), 20);

    let mut worst: f64 = 1.0;
    for (name, g) in &graphs {
        let exact = metrics::closeness_exact(g);
        let sampled = metrics::closeness_sampled(g, 100, 1).unwrap();
        let rho = spearman(&exact.values, &sampled.values);
        assert!(
            rho >= 0.9,
            "{name} (n={}): Spearman {rho:.4} below 0.9",
            g.n()
        );
        worst = worst.min(rho);
    }

    // Ordering-quality fidelity on the exactly solved small corpus.
    let mut inputs: Vec<BenchInput> = gen::synthetic_small_corpus()
        .into_iter()
        .map(|(name, graph)| BenchInput { name, graph, chi: None })
        .collect();
    for input in &mut inputs {
        let result = chromatic_exact(&input.graph, Budget::default());
        if !result.timed_out {
            input.chi = Some(result.chi);
        }
    }
    let strategies = vec![
        OrderingSpec {
            closeness_mode: Some(ClosenessMode::Exact),
            ..OrderingSpec::plain(Strategy::Closeness)
        },
        OrderingSpec {
            closeness_mode: Some(ClosenessMode::Sampled { samples: 100, seed: 1 }),
            ..OrderingSpec::plain(Strategy::Closeness)
        },
    ];
    let report =
        run_benchmark(&inputs, &strategies, Baseline::Optimal, &BenchConfig::default()).unwrap();
    let exact_gm = geomean_of(&report, "closeness:exact");
    let sampled_gm = geomean_of(&report, "closeness:sampled");
    assert!(
        (exact_gm - sampled_gm).abs() <= 0.03,
        "sampled ordering geomean {sampled_gm} strays more than 0.03 from exact {exact_gm}"
    );

    println!(
        "ACCEPTANCE 7 (sampled closeness fidelity): PASS - worst Spearman {worst:.4} >= 0.9 over 20 graphs; ordering geomeans exact {exact_gm:.4} vs sampled {sampled_gm:.4}"
    );
}

#[test]
fn acceptance_8_pagerank_conservation() {
    // Mass conservation, every iteration count, on corpus graphs without
    // isolated vertices.
    let mut checked = 0;
    for (name, g) in gen::synthetic_small_corpus() {
        if (0..g.n() as u32).any(|v| g.degree(v) == 0) {
            continue;
        }
        for iters in 1..=20 {
            let pr = metrics::pagerank(&g, &PageRankParams::new(0.85, iters).unwrap());
            let total: f64 = pr.values.iter().sum();
            assert!(
                (total - 1.0).abs() <= 1e-9,
                "{name}, {iters} iterations: mass {total}"
            );
        }
        checked += 1;
    }
    assert!(checked > 0);

    // Regular graphs sit at the uniform fixed point.
    for (name, g) in [
        ("cycle500", gen::cycle(500)),
        ("k24", gen::complete(24)),
        ("torus20x25", gen::grid(20, 25, false, true)),
        ("petersen", gen::petersen()),
    ] {
        let pr = metrics::pagerank(&g, &PageRankParams::default());
        let uniform = 1.0 / g.n() as f64;
        for (v, &x) in pr.values.iter().enumerate() {
            assert!(
                (x - uniform).abs() <= 1e-12,
                "{name}: vertex {v} has {x}, uniform is {uniform}"
            );
        }
    }
    println!(
        "ACCEPTANCE 8 (pagerank conservation): PASS - mass 1 +- 1e-9 per iteration on {checked} corpus graphs; regular graphs uniform +- 1e-12"
    );
}

#[test]
fn acceptance_9_determinism_across_thread_counts() {
    let mut inputs: Vec<BenchInput> = gen::synthetic_small_corpus()
        .into_iter()
        .take(8)
        .map(|(name, graph)| BenchInput { name, graph, chi: None })
        .collect();
    inputs.push(BenchInput {
        name: "mesh5k".into(),
        graph: gen::relabel(&gen::grid(70, 72, true, false), 9),
        chi: None,
    });
    inputs.push(BenchInput {
        name: "rgg5k".into(),
        graph: gen::random_geometric(5_000, 0.025, 77),
        chi: None,
    });
    let config = BenchConfig {
        metric: MetricConfig {
            pagerank: PageRankParams::default(),
            closeness: ClosenessMode::Sampled { samples: 64, seed: 5 },
        },
        ..BenchConfig::default()
    };
    let strategies = all_strategies(None);

    let run_once = || -> String {
        let report = run_benchmark(&inputs, &strategies, Baseline::Degree, &config).unwrap();
        colorder::bench::emit_csv(&report)
    };

    let reference = run_once();
    assert_eq!(reference, run_once(), "repeated runs differ");

    #[cfg(feature = "parallel")]
    for threads in [1usize, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let report = pool.install(run_once);
        assert_eq!(
            reference, report,
            "report bytes differ with {threads} threads"
        );
    }

    println!(
        "ACCEPTANCE 9 (determinism): PASS - byte-identical CSV reports across repeated runs and thread counts 1, 4, 8"
    );
}

/// Spearman rank correlation with average ranks for ties.
fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let ra = ranks(a);
    let rb = ranks(b);
    pearson(&ra, &rb)
}

fn ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let mut out = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            out[idx[k]] = avg;
        }
        i = j + 1;
    }
    out
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    cov / (va.sqrt() * vb.sqrt())
}
