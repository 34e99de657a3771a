//! Command-line front end: ingestion, metrics, coloring, exact solving,
//! benchmarking, the weight grid search, and corpus acquisition.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

mod fetch;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use colorder::bench::{
    self, all_strategies, emit_csv, emit_json, emit_scatter, load_corpus, prepare_inputs,
    run_benchmark, weight_grid_search, Baseline, BenchConfig,
};
use colorder::coloring::{greedy_color, verify, ColoringSummary};
use colorder::exact::{chi_with_cache, Budget};
use colorder::metrics::{self, ClosenessMode, MetricConfig, PageRankParams};
use colorder::ordering::{derive_permutation, OrderingSpec, WeightVector};

#[derive(Parser)]
#[command(
    name = "colorder",
    version,
    about = "Greedy graph coloring under social-network-analysis vertex orderings"
)]
struct Cli {
    /// Worker threads for data-parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color one graph under a chosen vertex ordering and write the
    /// assignment as CSV.
    Color(ColorArgs),
    /// Compute ordering metrics and export vertex,value CSV files.
    Metrics(MetricsArgs),
    /// Solve the exact chromatic number, caching a `.chi.json` sidecar.
    Exact(ExactArgs),
    /// Compare ordering strategies over a corpus directory.
    Bench(BenchArgs),
    /// Exhaustive weighted-ordering search against exact baselines.
    WeightsSearch(WeightsSearchArgs),
    /// Download pinned SuiteSparse matrices, or synthesize a stand-in
    /// corpus, into a directory.
    Fetch(FetchArgs),
}

#[derive(Args)]
struct MetricFlags {
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    alpha: f64,
    /// PageRank iteration count.
    #[arg(long = "pr-iters", default_value_t = 20)]
    pr_iters: u32,
    /// Closeness mode: `exact`, `sampled`, or `sampled:<k>`.
    #[arg(long, default_value = "exact")]
    closeness: String,
}

impl MetricFlags {
    fn to_config(&self) -> Result<MetricConfig, AppError> {
        let pagerank = PageRankParams::new(self.alpha, self.pr_iters)
            .map_err(|e| AppError::Usage(e.to_string()))?;
        let closeness = parse_closeness(&self.closeness)?;
        Ok(MetricConfig { pagerank, closeness })
    }
}

fn parse_closeness(s: &str) -> Result<ClosenessMode, AppError> {
    match s {
        "exact" => Ok(ClosenessMode::Exact),
        "sampled" => Ok(ClosenessMode::sampled_default()),
        other => {
            let samples = other
                .strip_prefix("sampled:")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| {
                    AppError::Usage(format!(
                        "--closeness expects `exact`, `sampled`, or `sampled:<k>`, got `{other}`"
                    ))
                })?;
            let ClosenessMode::Sampled { seed, .. } = ClosenessMode::sampled_default() else {
                unreachable!()
            };
            Ok(ClosenessMode::Sampled { samples, seed })
        }
    }
}

#[derive(Args)]
struct ColorArgs {
    /// Graph file (.mtx Matrix Market, or plain `n m` edge list).
    input: PathBuf,
    /// Ordering spec, e.g. `closeness`, `random:seed=42`,
    /// `weighted:0.1,0.05,0.1,0.7,0.05,0.0`.
    #[arg(long, default_value = "degree")]
    order: String,
    /// Neighborhood distance for the coloring.
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[command(flatten)]
    metric: MetricFlags,
    /// Output CSV path (default `<input>.color.csv`).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    /// Graph file.
    input: PathBuf,
    /// Which metric to export, or `all`.
    #[arg(long, default_value = "all")]
    metric: String,
    #[command(flatten)]
    flags: MetricFlags,
}

#[derive(Args)]
struct ExactArgs {
    /// Graph file.
    input: PathBuf,
    /// Branch-and-bound node budget.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    budget: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of graph files.
    #[arg(long)]
    corpus: PathBuf,
    /// Ratio baseline.
    #[arg(long, value_enum, default_value_t = BaselineArg::Degree)]
    baseline: BaselineArg,
    /// Strategy specs (repeatable), or `all` for the full protocol list.
    #[arg(long = "strategies", default_value = "all")]
    strategies: Vec<String>,
    /// Weights the `weighted` entry of `all` uses.
    #[arg(long, value_delimiter = ',', num_args = 6)]
    weights: Option<Vec<f64>>,
    /// Seeds averaged by the random strategy.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1u64, 2, 3, 4, 5])]
    seeds: Vec<u64>,
    /// Neighborhood distance for the colorings.
    #[arg(long, default_value_t = 1)]
    ell: u32,
    #[command(flatten)]
    metric: MetricFlags,
    /// Node budget per exact solve (optimal baseline).
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    budget: u64,
    /// Record per-strategy wall-clock in the report (makes reports
    /// non-reproducible byte-for-byte).
    #[arg(long)]
    timing: bool,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (default `<corpus>.bench.<format>`).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WeightsSearchArgs {
    /// Directory of graph files.
    #[arg(long)]
    corpus: PathBuf,
    /// Grid resolution; 1/step must be an integer.
    #[arg(long = "grid-step", default_value_t = 0.05)]
    grid_step: f64,
    #[command(flatten)]
    metric: MetricFlags,
    /// Node budget per exact solve.
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    budget: u64,
    /// Output JSON path (default `<corpus>.weights.json`).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FetchArgs {
    /// Destination directory for `.mtx` files.
    #[arg(long)]
    dest: PathBuf,
    /// Which pinned corpus to fetch.
    #[arg(long, value_enum, default_value_t = FetchSet::Small)]
    set: FetchSet,
    /// Download pinned SuiteSparse matrices or generate the synthetic
    /// stand-in corpus locally.
    #[arg(long, value_enum, default_value_t = FetchSource::Suitesparse)]
    source: FetchSource,
    /// Print the pinned list and URLs without touching the network.
    #[arg(long)]
    list_only: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaselineArg {
    Degree,
    Optimal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Scatter,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FetchSet {
    Small,
    Large,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FetchSource {
    Suitesparse,
    Synthetic,
}

enum AppError {
    Usage(String),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for AppError {
    fn from(err: anyhow::Error) -> Self {
        AppError::Data(err)
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };

    if let Some(threads) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("warning: could not configure {threads} threads: {err}");
        }
    }

    match run(cli.command, cli.threads) {
        Ok(()) => {}
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(AppError::Data(err)) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(command: Command, threads: Option<usize>) -> Result<(), AppError> {
    match command {
        Command::Color(args) => cmd_color(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Bench(args) => cmd_bench(args, threads),
        Command::WeightsSearch(args) => cmd_weights_search(args, threads),
        Command::Fetch(args) => fetch::cmd_fetch(args),
    }
}

fn load_graph(path: &Path) -> Result<colorder::Graph, AppError> {
    bench::load_graph_file(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(AppError::Data)
}

fn write_output(path: &Path, contents: &str) -> Result<(), AppError> {
    std::fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(AppError::Data)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn echo_config(pairs: &[(&str, String)]) {
    let rendered: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    eprintln!("config: {}", rendered.join(" "));
}

fn cmd_color(args: ColorArgs) -> Result<(), AppError> {
    let spec = OrderingSpec::parse(&args.order).map_err(|e| AppError::Usage(e.to_string()))?;
    spec.validate().map_err(|e| AppError::Usage(e.to_string()))?;
    if args.ell < 1 {
        return Err(AppError::Usage("--ell must be at least 1".into()));
    }
    let config = args.metric.to_config()?;
    echo_config(&[
        ("input", args.input.display().to_string()),
        ("order", spec.label()),
        ("ell", args.ell.to_string()),
        ("alpha", config.pagerank.alpha().to_string()),
        ("pr-iters", config.pagerank.iterations().to_string()),
        ("closeness", config.closeness.to_string()),
    ]);

    let g = load_graph(&args.input)?;
    let start = Instant::now();
    let order = derive_permutation(&g, &spec, &config)
        .map_err(|e| AppError::Data(anyhow::anyhow!(e)))?;
    let coloring =
        greedy_color(&g, &order, args.ell).map_err(|e| AppError::Data(anyhow::anyhow!(e)))?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;

    if !verify(&g, &coloring, args.ell) {
        return Err(AppError::Data(anyhow::anyhow!(
            "internal error: coloring failed verification"
        )));
    }

    let summary = ColoringSummary {
        strategy: spec.label(),
        ell: args.ell,
        num_colors: coloring.num_colors(),
        runtime_ms,
    };
    println!("{}", serde_json::to_string(&summary).expect("summary serializes"));

    let out = args
        .out
        .unwrap_or_else(|| args.input.with_extension("color.csv"));
    write_output(&out, &coloring.to_csv())
}

fn cmd_metrics(args: MetricsArgs) -> Result<(), AppError> {
    let config = args.flags.to_config()?;
    let wanted: Vec<&str> = match args.metric.as_str() {
        "all" => vec!["degree", "nbor2", "nbor3", "closeness", "clustering", "pagerank"],
        one @ ("degree" | "nbor2" | "nbor3" | "closeness" | "clustering" | "pagerank") => {
            vec![one]
        }
        other => {
            return Err(AppError::Usage(format!(
                "unknown metric `{other}` (expected degree|nbor2|nbor3|closeness|clustering|pagerank|all)"
            )))
        }
    };
    echo_config(&[
        ("input", args.input.display().to_string()),
        ("metric", args.metric.clone()),
        ("alpha", config.pagerank.alpha().to_string()),
        ("pr-iters", config.pagerank.iterations().to_string()),
        ("closeness", config.closeness.to_string()),
    ]);

    let g = load_graph(&args.input)?;
    for name in wanted {
        let mv = match name {
            "degree" => metrics::degree(&g),
            "nbor2" => metrics::k_neighborhood(&g, 2),
            "nbor3" => metrics::k_neighborhood(&g, 3),
            "clustering" => metrics::clustering_coefficient(&g),
            "pagerank" => metrics::pagerank(&g, &config.pagerank),
            "closeness" => match config.closeness {
                ClosenessMode::Exact => metrics::closeness_exact(&g),
                ClosenessMode::Sampled { samples, seed } => {
                    metrics::closeness_sampled(&g, samples, seed)
                        .map_err(|e| AppError::Data(anyhow::anyhow!(e)))?
                }
            },
            _ => unreachable!(),
        };
        let out = args.input.with_extension(format!("{name}.csv"));
        write_output(&out, &mv.to_csv())?;
    }
    Ok(())
}

fn cmd_exact(args: ExactArgs) -> Result<(), AppError> {
    echo_config(&[
        ("input", args.input.display().to_string()),
        ("budget", args.budget.to_string()),
    ]);
    let g = load_graph(&args.input)?;
    let (entry, cached) = chi_with_cache(&g, &args.input, Budget::nodes(args.budget));
    let mut value = serde_json::to_value(&entry).expect("cache entry serializes");
    value["from_cache"] = serde_json::Value::Bool(cached);
    println!("{value}");
    Ok(())
}

fn parse_strategies(
    raw: &[String],
    weights: Option<&Vec<f64>>,
) -> Result<Vec<OrderingSpec>, AppError> {
    let weights = match weights {
        None => None,
        Some(list) => {
            let arr: [f64; 6] = list
                .as_slice()
                .try_into()
                .map_err(|_| AppError::Usage("--weights expects 6 values".into()))?;
            Some(WeightVector::new(arr).map_err(|e| AppError::Usage(e.to_string()))?)
        }
    };
    if raw.len() == 1 && raw[0] == "all" {
        return Ok(all_strategies(weights));
    }
    raw.iter()
        .map(|s| {
            let mut spec = OrderingSpec::parse(s).map_err(|e| AppError::Usage(e.to_string()))?;
            if spec.strategy == colorder::ordering::Strategy::Weighted && spec.weights.is_none() {
                spec.weights = weights;
            }
            Ok(spec)
        })
        .collect()
}

fn cmd_bench(args: BenchArgs, threads: Option<usize>) -> Result<(), AppError> {
    let strategies = parse_strategies(&args.strategies, args.weights.as_ref())?;
    for spec in &strategies {
        if spec.strategy == colorder::ordering::Strategy::Weighted {
            spec.validate().map_err(|e| AppError::Usage(e.to_string()))?;
        }
    }
    if args.ell < 1 {
        return Err(AppError::Usage("--ell must be at least 1".into()));
    }
    let baseline = match args.baseline {
        BaselineArg::Degree => Baseline::Degree,
        BaselineArg::Optimal => Baseline::Optimal,
    };
    let config = BenchConfig {
        metric: args.metric.to_config()?,
        random_seeds: args.seeds.clone(),
        ell: args.ell,
        average_ratios: false,
        exact_budget: args.budget,
        timing: args.timing,
    };
    echo_config(&[
        ("corpus", args.corpus.display().to_string()),
        ("baseline", baseline.to_string()),
        (
            "strategies",
            strategies
                .iter()
                .map(|s| s.label())
                .collect::<Vec<_>>()
                .join("+"),
        ),
        ("seeds", args.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
        ("ell", args.ell.to_string()),
        ("alpha", config.metric.pagerank.alpha().to_string()),
        ("pr-iters", config.metric.pagerank.iterations().to_string()),
        ("closeness", config.metric.closeness.to_string()),
        ("budget", args.budget.to_string()),
        ("timing", args.timing.to_string()),
        ("threads", threads.map_or("auto".into(), |t| t.to_string())),
    ]);

    let (entries, warnings) = load_corpus(&args.corpus)
        .with_context(|| format!("reading corpus {}", args.corpus.display()))
        .map_err(AppError::Data)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let (inputs, warnings) = prepare_inputs(&entries, baseline, Budget::nodes(args.budget));
    for w in &warnings {
        eprintln!("warning: {w}");
    }

    let report = run_benchmark(&inputs, &strategies, baseline, &config)
        .map_err(|e| AppError::Data(anyhow::anyhow!(e)))?;

    println!("geometric-mean ratios vs {baseline} baseline over {} graphs:", report.per_graph.len());
    for agg in &report.aggregates {
        match agg.geomean_ratio {
            Some(gm) => println!("  {:<40} {:.4}  ({} graphs)", agg.strategy, gm, agg.graphs),
            None => println!("  {:<40} n/a", agg.strategy),
        }
    }
    if !report.excluded.is_empty() {
        println!("excluded from aggregates: {}", report.excluded.join(", "));
    }

    let default_out = |ext: &str| {
        let mut base = args.corpus.as_os_str().to_os_string();
        while base.to_string_lossy().ends_with('/') {
            let s = base.to_string_lossy().trim_end_matches('/').to_string();
            base = s.into();
        }
        PathBuf::from(format!("{}.bench.{ext}", PathBuf::from(base).display()))
    };
    match args.format {
        FormatArg::Csv => {
            let out = args.out.unwrap_or_else(|| default_out("csv"));
            write_output(&out, &emit_csv(&report))
        }
        FormatArg::Json => {
            let out = args.out.unwrap_or_else(|| default_out("json"));
            write_output(&out, &emit_json(&report))
        }
        FormatArg::Scatter => {
            let base = args.out.unwrap_or_else(|| default_out("scatter"));
            for (label, series) in emit_scatter(&report) {
                let safe: String = label
                    .chars()
                    .map(|c| if c.is_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
                    .collect();
                let out = PathBuf::from(format!("{}.{safe}.tsv", base.display()));
                write_output(&out, &series)?;
            }
            Ok(())
        }
    }
}

fn cmd_weights_search(args: WeightsSearchArgs, threads: Option<usize>) -> Result<(), AppError> {
    let config = BenchConfig {
        metric: args.metric.to_config()?,
        exact_budget: args.budget,
        ..BenchConfig::default()
    };
    echo_config(&[
        ("corpus", args.corpus.display().to_string()),
        ("grid-step", args.grid_step.to_string()),
        ("alpha", config.metric.pagerank.alpha().to_string()),
        ("pr-iters", config.metric.pagerank.iterations().to_string()),
        ("closeness", config.metric.closeness.to_string()),
        ("budget", args.budget.to_string()),
        ("threads", threads.map_or("auto".into(), |t| t.to_string())),
    ]);

    let (entries, warnings) = load_corpus(&args.corpus)
        .with_context(|| format!("reading corpus {}", args.corpus.display()))
        .map_err(AppError::Data)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let (inputs, warnings) = prepare_inputs(&entries, Baseline::Optimal, Budget::nodes(args.budget));
    for w in &warnings {
        eprintln!("warning: {w}");
    }

    let result = weight_grid_search(&inputs, args.grid_step, &config).map_err(|e| match e {
        bench::BenchError::BadGridStep(_) => AppError::Usage(e.to_string()),
        other => AppError::Data(anyhow::anyhow!(other)),
    })?;

    println!(
        "best weights (degree,nbor2,nbor3,closeness,clustering,pagerank): {}",
        result.best_weights
    );
    println!(
        "best geomean {:.4} over {} evaluations",
        result.best_geomean, result.evaluations
    );
    if !result.excluded.is_empty() {
        println!("excluded (no exact baseline): {}", result.excluded.join(", "));
    }

    let out = args.out.unwrap_or_else(|| {
        PathBuf::from(format!(
            "{}.weights.json",
            args.corpus.display().to_string().trim_end_matches('/')
        ))
    });
    let mut json = serde_json::to_string_pretty(&result).expect("result serializes");
    json.push('\n');
    write_output(&out, &json)
}
