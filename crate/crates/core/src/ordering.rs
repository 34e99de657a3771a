//! Vertex orderings: descending single-metric orders, seeded random
//! shuffles, z-score normalization, and uniform/weighted metric
//! combinations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VertexId;
use crate::metrics::{ClosenessMode, MetricKind, MetricSet, MetricVector};
use crate::rng;

#[derive(Debug, Error)]
pub enum OrderingError {
    #[error("sequence of length {got} is not a permutation of 0..{expected}")]
    NotAPermutation { expected: usize, got: usize },
    #[error("metric vectors disagree on length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("weights must be nonnegative, got {0}")]
    NegativeWeight(f64),
    #[error("weights must sum to 1, got {0}")]
    WeightSum(f64),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("strategy `{0}` requires a seed")]
    MissingSeed(String),
    #[error("strategy `{0}` requires weights")]
    MissingWeights(String),
    #[error("cannot parse ordering spec `{0}`")]
    BadSpec(String),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
}

/// A visit order: a bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<VertexId>,
}

impl Permutation {
    pub fn new(order: Vec<VertexId>) -> Result<Self, OrderingError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v as usize >= n || seen[v as usize] {
                return Err(OrderingError::NotAPermutation { expected: n, got: n });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { order })
    }

    fn from_sorted(order: Vec<VertexId>) -> Self {
        debug_assert!(Permutation::new(order.clone()).is_ok());
        Permutation { order }
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Sort vertices by score descending, ties broken by ascending vertex id.
pub fn order_descending(scores: &MetricVector) -> Permutation {
    let mut order: Vec<VertexId> = (0..scores.len() as VertexId).collect();
    order.sort_unstable_by(|&a, &b| {
        scores.values[b as usize]
            .total_cmp(&scores.values[a as usize])
            .then(a.cmp(&b))
    });
    Permutation::from_sorted(order)
}

/// (x - mean) / std per vertex, with the population standard deviation.
/// Constant vectors map to all zeros, making them no-ops in combinations.
pub fn zscore(scores: &MetricVector) -> MetricVector {
    let n = scores.len();
    if n == 0 {
        return scores.clone();
    }
    let first = scores.values[0];
    if scores.values.iter().all(|&x| x == first) {
        return MetricVector {
            kind: scores.kind,
            values: vec![0.0; n],
        };
    }
    let mean = scores.values.iter().sum::<f64>() / n as f64;
    let var = scores.values.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
    let std = var.sqrt();
    if std == 0.0 {
        return MetricVector {
            kind: scores.kind,
            values: vec![0.0; n],
        };
    }
    MetricVector {
        kind: scores.kind,
        values: scores.values.iter().map(|&x| (x - mean) / std).collect(),
    }
}

/// Weights over the six ordering metrics, in the order degree, nbor2,
/// nbor3, closeness, clustering, pagerank. Nonnegative, summing to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub degree: f64,
    pub nbor2: f64,
    pub nbor3: f64,
    pub closeness: f64,
    pub clustering: f64,
    pub pagerank: f64,
}

impl WeightVector {
    pub fn new(weights: [f64; 6]) -> Result<Self, OrderingError> {
        for &w in &weights {
            if !(w >= 0.0) {
                return Err(OrderingError::NegativeWeight(w));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(OrderingError::WeightSum(sum));
        }
        let [degree, nbor2, nbor3, closeness, clustering, pagerank] = weights;
        Ok(WeightVector {
            degree,
            nbor2,
            nbor3,
            closeness,
            clustering,
            pagerank,
        })
    }

    pub fn uniform() -> Self {
        WeightVector::new([1.0 / 6.0; 6]).unwrap()
    }

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.degree,
            self.nbor2,
            self.nbor3,
            self.closeness,
            self.clustering,
            self.pagerank,
        ]
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let w = self.as_array();
        write!(
            f,
            "{},{},{},{},{},{}",
            w[0], w[1], w[2], w[3], w[4], w[5]
        )
    }
}

/// values[v] = sum over metrics of w_m * z_m(v). Callers pass z-scored
/// vectors; the uniform ordering is `combine` with all weights 1/6.
pub fn combine(
    normalized: [&MetricVector; 6],
    weights: &WeightVector,
) -> Result<MetricVector, OrderingError> {
    let n = normalized[0].len();
    for mv in &normalized[1..] {
        if mv.len() != n {
            return Err(OrderingError::LengthMismatch(n, mv.len()));
        }
    }
    let w = weights.as_array();
    let values = (0..n)
        .map(|v| {
            normalized
                .iter()
                .zip(w.iter())
                .map(|(mv, &wm)| wm * mv.values[v])
                .sum()
        })
        .collect();
    Ok(MetricVector {
        kind: MetricKind::Combined,
        values,
    })
}

/// Uniform random permutation of `0..n` by Fisher–Yates over the pinned
/// ChaCha8 generator; identical across platforms for a fixed seed.
pub fn random_order(n: usize, seed: u64) -> Permutation {
    let mut rng = rng::seeded(seed);
    let mut order: Vec<VertexId> = (0..n as VertexId).collect();
    for i in (1..n).rev() {
        let j = rng::uniform_below(&mut rng, i as u64 + 1) as usize;
        order.swap(i, j);
    }
    Permutation::from_sorted(order)
}

/// The nine ordering strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Degree,
    Nbor2,
    Nbor3,
    Closeness,
    Clustering,
    PageRank,
    Random,
    Uniform,
    Weighted,
}

impl Strategy {
    pub const ALL: [Strategy; 9] = [
        Strategy::Degree,
        Strategy::Nbor2,
        Strategy::Nbor3,
        Strategy::Closeness,
        Strategy::Clustering,
        Strategy::PageRank,
        Strategy::Random,
        Strategy::Uniform,
        Strategy::Weighted,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Degree => "degree",
            Strategy::Nbor2 => "nbor2",
            Strategy::Nbor3 => "nbor3",
            Strategy::Closeness => "closeness",
            Strategy::Clustering => "clustering",
            Strategy::PageRank => "pagerank",
            Strategy::Random => "random",
            Strategy::Uniform => "uniform",
            Strategy::Weighted => "weighted",
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A strategy plus the parameters it needs to yield a permutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingSpec {
    pub strategy: Strategy,
    /// Required for `weighted`.
    pub weights: Option<WeightVector>,
    /// Required for `random` when deriving a single permutation. In the
    /// benchmark, a seedless `random` spec means the averaged protocol.
    pub seed: Option<u64>,
    /// Closeness variant override; `None` uses the run-level mode.
    pub closeness_mode: Option<ClosenessMode>,
}

impl OrderingSpec {
    pub fn plain(strategy: Strategy) -> Self {
        OrderingSpec {
            strategy,
            weights: None,
            seed: None,
            closeness_mode: None,
        }
    }

    pub fn weighted(weights: WeightVector) -> Self {
        OrderingSpec {
            weights: Some(weights),
            ..OrderingSpec::plain(Strategy::Weighted)
        }
    }

    pub fn random(seed: u64) -> Self {
        OrderingSpec {
            seed: Some(seed),
            ..OrderingSpec::plain(Strategy::Random)
        }
    }

    /// Parse the CLI form: `closeness`, `random:seed=42`,
    /// `weighted:0.1,0.05,0.1,0.7,0.05,0.0`, ...
    pub fn parse(s: &str) -> Result<Self, OrderingError> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let strategy = match head {
            "degree" => Strategy::Degree,
            "nbor2" => Strategy::Nbor2,
            "nbor3" => Strategy::Nbor3,
            "closeness" => Strategy::Closeness,
            "clustering" => Strategy::Clustering,
            "pagerank" => Strategy::PageRank,
            "random" => Strategy::Random,
            "uniform" => Strategy::Uniform,
            "weighted" => Strategy::Weighted,
            _ => return Err(OrderingError::BadSpec(s.to_string())),
        };
        let mut spec = OrderingSpec::plain(strategy);
        match (strategy, rest) {
            (_, None) => {}
            (Strategy::Random, Some(r)) => {
                let seed = r
                    .strip_prefix("seed=")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| OrderingError::BadSpec(s.to_string()))?;
                spec.seed = Some(seed);
            }
            (Strategy::Weighted, Some(r)) => {
                let parts: Vec<f64> = r
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| OrderingError::BadSpec(s.to_string()))?;
                if parts.len() != 6 {
                    return Err(OrderingError::WeightCount {
                        expected: 6,
                        got: parts.len(),
                    });
                }
                spec.weights = Some(WeightVector::new([
                    parts[0], parts[1], parts[2], parts[3], parts[4], parts[5],
                ])?);
            }
            (Strategy::Closeness, Some("exact")) => {
                spec.closeness_mode = Some(ClosenessMode::Exact);
            }
            (Strategy::Closeness, Some(r)) if r.starts_with("sampled") => {
                let mode = match r.strip_prefix("sampled") {
                    Some("") => ClosenessMode::sampled_default(),
                    Some(rest) => {
                        let k = rest
                            .strip_prefix(':')
                            .and_then(|v| v.parse::<usize>().ok())
                            .ok_or_else(|| OrderingError::BadSpec(s.to_string()))?;
                        let ClosenessMode::Sampled { seed, .. } = ClosenessMode::sampled_default()
                        else {
                            unreachable!()
                        };
                        ClosenessMode::Sampled { samples: k, seed }
                    }
                    None => unreachable!(),
                };
                spec.closeness_mode = Some(mode);
            }
            _ => return Err(OrderingError::BadSpec(s.to_string())),
        }
        Ok(spec)
    }

    /// Canonical label, used in reports and file names.
    pub fn label(&self) -> String {
        match self.strategy {
            Strategy::Random => match self.seed {
                Some(seed) => format!("random:seed={seed}"),
                None => "random".to_string(),
            },
            Strategy::Closeness => match self.closeness_mode {
                Some(ClosenessMode::Exact) => "closeness:exact".to_string(),
                Some(ClosenessMode::Sampled { .. }) => "closeness:sampled".to_string(),
                None => "closeness".to_string(),
            },
            Strategy::Weighted => match self.weights {
                Some(w) => format!("weighted:{w}"),
                None => "weighted".to_string(),
            },
            other => other.name().to_string(),
        }
    }

    /// Check the spec invariants for single-permutation use.
    pub fn validate(&self) -> Result<(), OrderingError> {
        if self.strategy == Strategy::Weighted && self.weights.is_none() {
            return Err(OrderingError::MissingWeights(self.label()));
        }
        if self.strategy == Strategy::Random && self.seed.is_none() {
            return Err(OrderingError::MissingSeed(self.label()));
        }
        Ok(())
    }
}

/// Derive a permutation straight from a graph, computing only the metrics
/// the spec needs. Combined strategies fall back to a full
/// [`MetricSet::compute`].
pub fn derive_permutation(
    g: &crate::graph::Graph,
    spec: &OrderingSpec,
    config: &crate::metrics::MetricConfig,
) -> Result<Permutation, OrderingError> {
    use crate::metrics;
    spec.validate()?;
    let perm = match spec.strategy {
        Strategy::Degree => order_descending(&metrics::degree(g)),
        Strategy::Nbor2 => order_descending(&metrics::k_neighborhood(g, 2)),
        Strategy::Nbor3 => order_descending(&metrics::k_neighborhood(g, 3)),
        Strategy::Clustering => order_descending(&metrics::clustering_coefficient(g)),
        Strategy::PageRank => order_descending(&metrics::pagerank(g, &config.pagerank)),
        Strategy::Random => random_order(g.n(), spec.seed.unwrap()),
        Strategy::Closeness => {
            let mv = match spec.closeness_mode.unwrap_or(config.closeness) {
                ClosenessMode::Exact => metrics::closeness_exact(g),
                ClosenessMode::Sampled { samples, seed } => {
                    metrics::closeness_sampled(g, samples, seed)
                        .expect("sample count validated at parse time")
                }
            };
            order_descending(&mv)
        }
        Strategy::Uniform | Strategy::Weighted => {
            let set = MetricSet::compute(g, config, false, false)
                .expect("combined metrics never reject a validated config");
            permutation_for(spec, &set)?
        }
    };
    Ok(perm)
}

/// Derive the spec's permutation from precomputed metrics.
pub fn permutation_for(spec: &OrderingSpec, set: &MetricSet) -> Result<Permutation, OrderingError> {
    spec.validate()?;
    let n = set.degree.len();
    let perm = match spec.strategy {
        Strategy::Degree => order_descending(&set.degree),
        Strategy::Nbor2 => order_descending(&set.nbor2),
        Strategy::Nbor3 => order_descending(&set.nbor3),
        Strategy::Closeness => order_descending(set.closeness(spec.closeness_mode)),
        Strategy::Clustering => order_descending(&set.clustering),
        Strategy::PageRank => order_descending(&set.pagerank),
        Strategy::Random => random_order(n, spec.seed.unwrap()),
        Strategy::Uniform | Strategy::Weighted => {
            let weights = match spec.strategy {
                Strategy::Uniform => WeightVector::uniform(),
                _ => spec.weights.unwrap(),
            };
            let arr = set.as_array();
            let zs: Vec<MetricVector> = arr.iter().map(|mv| zscore(mv)).collect();
            let combined = combine(
                [&zs[0], &zs[1], &zs[2], &zs[3], &zs[4], &zs[5]],
                &weights,
            )?;
            order_descending(&combined)
        }
    };
    Ok(perm)
}
