//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, LabError};
use crate::contraction::ordered_contraction_factor;
use crate::extended::Extended;
use crate::space::{
    close_order, metric_from_embedding, validate_flat, FiniteMetric, Norm, OrderKind, OrderRelation,
    OrderedMetricSpace, SelfMap, DEFAULT_TOLERANCE,
};

pub const DEFAULT_REJECTION_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum OrderModel {
    /// A random linear order.
    Total,
    /// Closure of pairs `i < j`, each kept with probability `p`.
    RandomDag { p: f64 },
    /// Bottom, then disjoint chains side by side, then top.
    Lattice,
    Antichain,
    /// Closure of pairs `i != j` with probability `p`; may contain cycles.
    Quasi { p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum MetricModel {
    Line,
    Embedding { dim: usize, norm: Norm },
    /// Random symmetric weights in `[0.1, 10)` closed under shortest paths.
    RandomRepaired,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum MapModel {
    Constant,
    Random,
    /// A uniformly built increasing map, with no contraction requirement.
    Increasing,
    /// Increasing maps resampled until the ordered factor is below `alpha_target`.
    MonotoneRejection {
        alpha_target: f64,
        #[serde(default = "default_budget")]
        budget: usize,
    },
}

fn default_budget() -> usize {
    DEFAULT_REJECTION_BUDGET
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub order: OrderModel,
    pub metric: MetricModel,
    pub map: MapModel,
}

impl GenConfig {
    fn validate(&self) -> Result<(), LabError> {
        let bad = |reason: &str| Err(LabError::InvalidConfig { reason: reason.to_string() });
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        if let OrderModel::RandomDag { p } | OrderModel::Quasi { p } = self.order {
            if !(0.0..=1.0).contains(&p) {
                return bad("probability outside [0, 1]");
            }
        }
        if let MetricModel::Embedding { dim: 0, .. } = self.metric {
            return bad("embedding dimension must be positive");
        }
        if let MapModel::MonotoneRejection { alpha_target, budget } = self.map {
            if !(alpha_target > 0.0 && alpha_target <= 1.0) || budget == 0 {
                return bad("alpha_target must lie in (0, 1] with a positive budget");
            }
        }
        Ok(())
    }
}

/// Deterministic in `(config, seed)`.
pub fn generate_instance(config: &GenConfig, seed: u64) -> Result<Instance, LabError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = config.n;
    let order = sample_order(config.order, n, &mut rng);
    let metric = sample_metric(config.metric, n, &mut rng);
    let space = OrderedMetricSpace::new(metric, order).expect("sizes agree");
    let map = if n == 1 {
        SelfMap::identity(1)
    } else {
        sample_map(config.map, &space, &mut rng).ok_or(LabError::GenerationBudgetExhausted { config: *config, seed })?
    };
    Ok(Instance::new(space, map, format!("generated {seed}"), Some(seed)))
}

fn sample_order(model: OrderModel, n: usize, rng: &mut ChaCha8Rng) -> OrderRelation {
    let (pairs, kind) = match model {
        OrderModel::Antichain => return OrderRelation::discrete(n),
        OrderModel::Total => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            (perm.windows(2).map(|w| (w[0], w[1])).collect(), OrderKind::Partial)
        }
        OrderModel::RandomDag { p } => {
            let pairs = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
            (pairs, OrderKind::Partial)
        }
        OrderModel::Quasi { p } => {
            let pairs = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && rng.gen_bool(p))
                .collect();
            (pairs, OrderKind::Quasi)
        }
        OrderModel::Lattice => (lattice_pairs(n, rng), OrderKind::Partial),
    };
    close_order(&pairs, n, kind).expect("generated relation is consistent with its kind")
}

fn lattice_pairs(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let (bottom, top) = (0, n - 1);
    let middle: Vec<usize> = (1..n - 1).collect();
    if middle.is_empty() {
        return vec![(bottom, top)];
    }
    let chains = rng.gen_range(1..=middle.len());
    let mut pairs = Vec::new();
    for c in 0..chains {
        let members: Vec<usize> = middle.iter().copied().skip(c).step_by(chains).collect();
        pairs.push((bottom, members[0]));
        pairs.extend(members.windows(2).map(|w| (w[0], w[1])));
        pairs.push((*members.last().unwrap(), top));
    }
    pairs
}

fn sample_metric(model: MetricModel, n: usize, rng: &mut ChaCha8Rng) -> FiniteMetric {
    match model {
        MetricModel::Line => {
            let coords: Vec<Vec<f64>> =
                distinct_points(n, 1, 10 * n as i64 + 10, rng).into_iter().map(|p| vec![p[0] as f64 / 10.0]).collect();
            metric_from_embedding(&coords, Norm::Euclidean).expect("distinct points")
        }
        MetricModel::Embedding { dim, norm } => {
            let coords: Vec<Vec<f64>> = distinct_points(n, dim, 4 * n as i64 + 20, rng)
                .into_iter()
                .map(|p| p.into_iter().map(|c| c as f64 / 4.0).collect())
                .collect();
            metric_from_embedding(&coords, norm).expect("distinct points")
        }
        MetricModel::RandomRepaired => {
            let mut d = vec![0.0; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = rng.gen_range(0.1..10.0);
                    d[i * n + j] = w;
                    d[j * n + i] = w;
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let via = d[i * n + k] + d[k * n + j];
                        if via < d[i * n + j] {
                            d[i * n + j] = via;
                        }
                    }
                }
            }
            validate_flat(n, d, DEFAULT_TOLERANCE).expect("shortest-path closure is a metric")
        }
    }
}

fn distinct_points(n: usize, dim: usize, range: i64, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(n);
    while out.len() < n {
        let p: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..range)).collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn sample_map(model: MapModel, space: &OrderedMetricSpace, rng: &mut ChaCha8Rng) -> Option<SelfMap> {
    let n = space.size();
    match model {
        MapModel::Constant => Some(SelfMap::constant(n, rng.gen_range(0..n))),
        MapModel::Random => Some(SelfMap::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap()),
        MapModel::Increasing => (0..DEFAULT_REJECTION_BUDGET).find_map(|_| increasing_map(space, rng)),
        MapModel::MonotoneRejection { alpha_target, budget } => (0..budget)
            .filter_map(|_| increasing_map(space, rng))
            .find(|map| ordered_contraction_factor(space, map).alpha_star < Extended::Finite(alpha_target)),
    }
}

/// One attempt at an increasing map, assigning images along a linear
/// extension. Returns `None` when some point has no admissible image.
fn increasing_map(space: &OrderedMetricSpace, rng: &mut ChaCha8Rng) -> Option<SelfMap> {
    let n = space.size();
    let down = |x: usize| (0..n).filter(|&y| space.le(y, x)).count();
    let mut sequence: Vec<usize> = (0..n).collect();
    sequence.sort_by_key(|&x| (down(x), x));

    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used: Vec<usize> = Vec::new();
    for &x in &sequence {
        let admissible: Vec<usize> = (0..n)
            .filter(|&c| {
                (0..n).all(|y| match image[y] {
                    None => true,
                    Some(ty) => (!space.le(y, x) || space.le(ty, c)) && (!space.le(x, y) || space.le(c, ty)),
                })
            })
            .collect();
        if admissible.is_empty() {
            return None;
        }
        // Favour images already in use, so small image sets (and with them
        // contractive maps) are common.
        let reused: Vec<usize> = admissible.iter().copied().filter(|c| used.contains(c)).collect();
        let c = if !reused.is_empty() && rng.gen_bool(0.5) {
            *reused.choose(rng).unwrap()
        } else {
            *admissible.choose(rng).unwrap()
        };
        if !used.contains(&c) {
            used.push(c);
        }
        image[x] = Some(c);
    }
    Some(SelfMap::new(image.into_iter().map(Option::unwrap).collect()).unwrap())
}
