//! The comparative evaluation protocol: per-graph color counts and ratios
//! against a baseline, geometric-mean aggregation, fixed-seed random
//! averaging, and the weighted-combination grid search.
//!
//! Graphs are processed as independent tasks and every aggregate is a
//! sequential reduction in corpus order, so reports are byte-identical for
//! any thread count.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{greedy_color, ColoringError};
use crate::exact::{self, Budget};
use crate::graph::{Graph, ParseError};
use crate::metrics::{ClosenessMode, MetricConfig, MetricSet, MetricVector, MetricsError};
use crate::ordering::{
    combine, order_descending, permutation_for, random_order, zscore, OrderingError, OrderingSpec,
    Strategy, WeightVector,
};
use crate::par;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Weights used when a strategy list asks for `weighted` without explicit
/// coefficients: the best combination found by the grid search over the
/// small exactly-solved corpus, dominated by closeness.
pub const DEFAULT_WEIGHTS: [f64; 6] = [0.10, 0.05, 0.10, 0.70, 0.05, 0.00];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("benchmark corpus is empty")]
    EmptyCorpus,
    #[error("geometric mean of an empty sequence")]
    EmptyGeomean,
    #[error("geometric mean requires positive inputs, got {0}")]
    NonPositive(f64),
    #[error("grid step {0} does not evenly divide 1")]
    BadGridStep(f64),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// What color counts are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Baseline {
    /// The degree (1-neighborhood) greedy ordering.
    Degree,
    /// The exact chromatic number.
    Optimal,
}

impl std::fmt::Display for Baseline {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Baseline::Degree => f.write_str("degree"),
            Baseline::Optimal => f.write_str("optimal"),
        }
    }
}

/// Full parameter echo for one benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub metric: MetricConfig,
    /// Seeds for the averaged random strategy.
    pub random_seeds: Vec<u64>,
    pub ell: u32,
    /// Average per-seed ratios instead of forming one ratio from the
    /// averaged count. Off by default.
    pub average_ratios: bool,
    /// Node budget when the optimal baseline has to be solved.
    pub exact_budget: u64,
    /// Record wall-clock per strategy. Off by default so reports stay
    /// byte-identical across runs.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            metric: MetricConfig::default(),
            random_seeds: vec![1, 2, 3, 4, 5],
            ell: 1,
            average_ratios: false,
            exact_budget: Budget::default().max_nodes,
            timing: false,
        }
    }
}

/// One graph ready for benchmarking; `chi` must be present for the optimal
/// baseline for the graph to enter aggregates.
#[derive(Debug, Clone)]
pub struct BenchInput {
    pub name: String,
    pub graph: Graph,
    pub chi: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyResult {
    pub colors: f64,
    pub ratio: Option<f64>,
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRow {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub baseline_colors: Option<f64>,
    /// Parallel to the report's `strategies`.
    pub results: Vec<StrategyResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyAggregate {
    pub strategy: String,
    pub geomean_ratio: Option<f64>,
    pub graphs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub baseline: Baseline,
    pub config: BenchConfig,
    pub strategies: Vec<String>,
    pub per_graph: Vec<GraphRow>,
    pub aggregates: Vec<StrategyAggregate>,
    /// Graphs left out of aggregates because their baseline is unavailable.
    pub excluded: Vec<String>,
}

impl BenchReport {
    pub fn aggregate_for(&self, label: &str) -> Option<&StrategyAggregate> {
        self.aggregates.iter().find(|a| a.strategy == label)
    }
}

/// exp(mean(ln x)), in log space.
pub fn geometric_mean(xs: &[f64]) -> Result<f64, BenchError> {
    if xs.is_empty() {
        return Err(BenchError::EmptyGeomean);
    }
    let mut log_sum = 0.0;
    for &x in xs {
        if !(x > 0.0) {
            return Err(BenchError::NonPositive(x));
        }
        log_sum += x.ln();
    }
    Ok((log_sum / xs.len() as f64).exp())
}

/// Run every strategy over every graph: metrics once per graph, one greedy
/// coloring per strategy (`random` averages its color counts over the
/// configured seeds), ratios against the baseline, geometric means over the
/// corpus.
pub fn run_benchmark(
    inputs: &[BenchInput],
    strategies: &[OrderingSpec],
    baseline: Baseline,
    config: &BenchConfig,
) -> Result<BenchReport, BenchError> {
    if inputs.is_empty() {
        return Err(BenchError::EmptyCorpus);
    }
    for spec in strategies {
        if spec.strategy == Strategy::Weighted {
            spec.validate()?;
        }
    }
    let labels: Vec<String> = strategies.iter().map(|s| s.label()).collect();
    let also_exact = strategies
        .iter()
        .any(|s| matches!(s.closeness_mode, Some(ClosenessMode::Exact)));
    let also_sampled = strategies
        .iter()
        .any(|s| matches!(s.closeness_mode, Some(ClosenessMode::Sampled { .. })));

    let rows: Vec<Result<GraphRow, BenchError>> = par::map_range(inputs.len(), |i| {
        let input = &inputs[i];
        bench_one_graph(
            input,
            strategies,
            baseline,
            config,
            also_exact,
            also_sampled,
        )
    });
    let mut per_graph = Vec::with_capacity(rows.len());
    for row in rows {
        per_graph.push(row?);
    }

    let mut aggregates = Vec::with_capacity(strategies.len());
    for (s, label) in labels.iter().enumerate() {
        let ratios: Vec<f64> = per_graph
            .iter()
            .filter_map(|row| row.results[s].ratio)
            .collect();
        aggregates.push(StrategyAggregate {
            strategy: label.clone(),
            geomean_ratio: if ratios.is_empty() {
                None
            } else {
                Some(geometric_mean(&ratios)?)
            },
            graphs: ratios.len(),
        });
    }
    let excluded = per_graph
        .iter()
        .filter(|row| row.baseline_colors.is_none())
        .map(|row| row.graph.clone())
        .collect();

    Ok(BenchReport {
        schema_version: REPORT_SCHEMA_VERSION,
        baseline,
        config: config.clone(),
        strategies: labels,
        per_graph,
        aggregates,
        excluded,
    })
}

fn bench_one_graph(
    input: &BenchInput,
    strategies: &[OrderingSpec],
    baseline: Baseline,
    config: &BenchConfig,
    also_exact: bool,
    also_sampled: bool,
) -> Result<GraphRow, BenchError> {
    let g = &input.graph;
    let set = MetricSet::compute(g, &config.metric, also_exact, also_sampled)?;

    let baseline_colors: Option<f64> = match baseline {
        Baseline::Degree => {
            let order = order_descending(&set.degree);
            Some(greedy_color(g, &order, config.ell)?.num_colors() as f64)
        }
        Baseline::Optimal => input.chi.map(|chi| chi as f64),
    };

    let mut results = Vec::with_capacity(strategies.len());
    for spec in strategies {
        let start = std::time::Instant::now();
        let (colors, ratio) = match (spec.strategy, spec.seed) {
            (Strategy::Random, None) => {
                // Protocol averaging over the configured seeds.
                let counts: Vec<f64> = config
                    .random_seeds
                    .iter()
                    .map(|&seed| {
                        greedy_color(g, &random_order(g.n(), seed), config.ell)
                            .map(|c| c.num_colors() as f64)
                    })
                    .collect::<Result<_, _>>()?;
                let mean_count = counts.iter().sum::<f64>() / counts.len() as f64;
                let ratio = baseline_colors.map(|b| {
                    if config.average_ratios {
                        counts.iter().map(|c| c / b).sum::<f64>() / counts.len() as f64
                    } else {
                        mean_count / b
                    }
                });
                (mean_count, ratio)
            }
            _ => {
                let order = permutation_for(spec, &set)?;
                let colors = greedy_color(g, &order, config.ell)?.num_colors() as f64;
                (colors, baseline_colors.map(|b| colors / b))
            }
        };
        let runtime_ms = config
            .timing
            .then(|| start.elapsed().as_secs_f64() * 1e3);
        results.push(StrategyResult {
            colors,
            ratio,
            runtime_ms,
        });
    }

    Ok(GraphRow {
        graph: input.name.clone(),
        n: g.n(),
        m: g.m(),
        baseline_colors,
        results,
    })
}

/// Result of the exhaustive weighted-ordering search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub best_weights: WeightVector,
    pub best_geomean: f64,
    pub grid_step: f64,
    pub evaluations: u64,
    /// Graphs skipped for lack of an exact baseline.
    pub excluded: Vec<String>,
}

/// Enumerate every weight vector with entries in `{0, step, ..., 1}`
/// summing to 1, evaluate each weighted ordering's geometric-mean ratio to
/// the optimal baseline, and return the best point (ties resolved to the
/// lexicographically smallest vector).
pub fn weight_grid_search(
    inputs: &[BenchInput],
    step: f64,
    config: &BenchConfig,
) -> Result<GridSearchResult, BenchError> {
    let t = 1.0 / step;
    let units = t.round();
    if !(units >= 1.0 && (t - units).abs() < 1e-9) {
        return Err(BenchError::BadGridStep(step));
    }
    let units = units as u32;

    let mut excluded = Vec::new();
    let mut prepared: Vec<(Vec<MetricVector>, f64, &Graph)> = Vec::new();
    for input in inputs {
        let Some(chi) = input.chi else {
            excluded.push(input.name.clone());
            continue;
        };
        let set = MetricSet::compute(&input.graph, &config.metric, false, false)?;
        let zscored: Vec<MetricVector> = set.as_array().iter().map(|mv| zscore(mv)).collect();
        prepared.push((zscored, chi as f64, &input.graph));
    }
    if prepared.is_empty() {
        return Err(BenchError::EmptyCorpus);
    }

    let points = enumerate_weight_grid(units);
    let geomeans: Vec<f64> = par::map_range(points.len(), |p| {
        let weights = grid_point_weights(&points[p], units);
        let mut log_sum = 0.0;
        for (zscored, chi, g) in &prepared {
            let combined = combine(
                [
                    &zscored[0], &zscored[1], &zscored[2], &zscored[3], &zscored[4], &zscored[5],
                ],
                &weights,
            )
            .expect("prepared vectors share a length");
            let order = order_descending(&combined);
            let colors = greedy_color(g, &order, config.ell)
                .expect("derived order is a permutation")
                .num_colors() as f64;
            log_sum += (colors / chi).ln();
        }
        (log_sum / prepared.len() as f64).exp()
    });

    let mut best = 0usize;
    for (i, &gm) in geomeans.iter().enumerate() {
        if gm < geomeans[best] {
            best = i;
        }
    }

    Ok(GridSearchResult {
        best_weights: grid_point_weights(&points[best], units),
        best_geomean: geomeans[best],
        grid_step: step,
        evaluations: points.len() as u64,
        excluded,
    })
}

/// All 6-part compositions of `units`, in lexicographic order.
fn enumerate_weight_grid(units: u32) -> Vec<[u32; 6]> {
    let mut points = Vec::new();
    let mut current = [0u32; 6];
    fn rec(points: &mut Vec<[u32; 6]>, current: &mut [u32; 6], slot: usize, remaining: u32) {
        if slot == 5 {
            current[5] = remaining;
            points.push(*current);
            return;
        }
        for value in 0..=remaining {
            current[slot] = value;
            rec(points, current, slot + 1, remaining - value);
        }
    }
    rec(&mut points, &mut current, 0, units);
    points
}

fn grid_point_weights(point: &[u32; 6], units: u32) -> WeightVector {
    let w: Vec<f64> = point.iter().map(|&c| c as f64 / units as f64).collect();
    WeightVector::new([w[0], w[1], w[2], w[3], w[4], w[5]]).expect("composition sums to 1")
}

/// Long-form CSV: one row per (graph, strategy) pair. Cells for
/// unavailable ratios or disabled timing stay empty; fields containing
/// delimiters are double-quoted.
pub fn emit_csv(report: &BenchReport) -> String {
    let mut out = String::from("graph,n,m,strategy,colors,ratio,runtime_ms\n");
    for row in &report.per_graph {
        for (label, res) in report.strategies.iter().zip(&row.results) {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                csv_field(&row.graph),
                row.n,
                row.m,
                csv_field(label),
                res.colors,
                opt_cell(res.ratio),
                opt_cell(res.runtime_ms),
            ));
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// The full report as pretty JSON.
pub fn emit_json(report: &BenchReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<BenchReport, serde_json::Error> {
    serde_json::from_str(text)
}

/// Per-strategy profile series: ratios sorted ascending, one
/// `(index, ratio)` pair per line, tab-separated. Returns
/// `(strategy label, series content)` pairs; callers write one file per
/// series.
pub fn emit_scatter(report: &BenchReport) -> Vec<(String, String)> {
    report
        .strategies
        .iter()
        .enumerate()
        .map(|(s, label)| {
            let mut ratios: Vec<f64> = report
                .per_graph
                .iter()
                .filter_map(|row| row.results[s].ratio)
                .collect();
            ratios.sort_by(|a, b| a.total_cmp(b));
            let mut out = format!("# strategy={label} baseline={}\n", report.baseline);
            for (i, r) in ratios.iter().enumerate() {
                out.push_str(&format!("{i}\t{r}\n"));
            }
            (label.clone(), out)
        })
        .collect()
}

/// A graph file loaded for benchmarking.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub path: PathBuf,
    pub graph: Graph,
}

/// Load every `.mtx` and `.txt` graph under `dir`, sorted by file name.
/// Unreadable files are skipped and reported in the warning list.
pub fn load_corpus(dir: &Path) -> std::io::Result<(Vec<CorpusEntry>, Vec<String>)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("mtx") | Some("txt")
            )
        })
        .collect();
    paths.sort();

    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for path in paths {
        match load_graph_file(&path) {
            Ok(graph) => {
                if graph.n() == 0 {
                    warnings.push(format!("{}: empty graph, skipped", path.display()));
                    continue;
                }
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                entries.push(CorpusEntry { name, path, graph });
            }
            Err(err) => warnings.push(format!("{}: {err}, skipped", path.display())),
        }
    }
    Ok((entries, warnings))
}

/// Parse one graph file, choosing the format by extension (`.mtx` Matrix
/// Market, anything else the plain edge-list format).
pub fn load_graph_file(path: &Path) -> Result<Graph, ParseError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let (graph, _) = if path.extension().and_then(|e| e.to_str()) == Some("mtx") {
        Graph::parse_matrix_market(reader)?
    } else {
        Graph::parse_edge_list(reader)?
    };
    Ok(graph)
}

/// Turn corpus entries into benchmark inputs. For the optimal baseline the
/// chromatic number comes from the sidecar cache or a fresh solve; timed-out
/// graphs keep `chi = None` and a warning explains the exclusion.
pub fn prepare_inputs(
    entries: &[CorpusEntry],
    baseline: Baseline,
    budget: Budget,
) -> (Vec<BenchInput>, Vec<String>) {
    let mut warnings = Vec::new();
    let mut inputs = Vec::with_capacity(entries.len());
    for entry in entries {
        let chi = match baseline {
            Baseline::Degree => None,
            Baseline::Optimal => {
                let (info, _cached) = exact::chi_with_cache(&entry.graph, &entry.path, budget);
                if info.timed_out {
                    warnings.push(format!(
                        "{}: exact solve exhausted {} nodes, excluded from optimal-baseline aggregates",
                        entry.name, budget.max_nodes
                    ));
                    None
                } else {
                    Some(info.chi)
                }
            }
        };
        inputs.push(BenchInput {
            name: entry.name.clone(),
            graph: entry.graph.clone(),
            chi,
        });
    }
    (inputs, warnings)
}

/// The named protocol strategy list: the seven single orderings plus the
/// two combined ones (`weighted` with [`DEFAULT_WEIGHTS`] unless overridden).
pub fn all_strategies(weights: Option<WeightVector>) -> Vec<OrderingSpec> {
    let weights = weights.unwrap_or_else(|| WeightVector::new(DEFAULT_WEIGHTS).unwrap());
    Strategy::ALL
        .iter()
        .map(|&s| match s {
            Strategy::Weighted => OrderingSpec::weighted(weights),
            other => OrderingSpec::plain(other),
        })
        .collect()
}
