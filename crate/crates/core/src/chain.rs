//! Comparability graph, chain components and the chain metric.
//!
//! The chain metric `e(x, y)` is the infimum, over all chains
//! `x = z_1 <> z_2 <> ... <> z_k = y`, of `d(z_1, z_2) + ... + d(z_{k-1}, z_k)`.
//! With nonnegative weights this is the shortest-path distance in the
//! comparability graph, and `+inf` between different chain components.
//!
//! Path lengths are summed exactly (see [`crate::exact`]) and rounded once,
//! so the Dijkstra path and the brute-force oracle agree bit for bit.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::Grid;
use crate::extended::Extended;
use crate::space::{OrderedMetricSpace, PointId};

/// Default size cap for [`brute_force_chain_metric`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum ChainError {
    #[error("space has {n} points; brute-force enumeration is capped at {cap}")]
    SpaceTooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// Undirected graph with an edge `{i, j}` for every comparable pair `i != j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparabilityGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl ComparabilityGraph {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Edges with `a < b`, in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }
}

pub fn comparability_graph(space: &OrderedMetricSpace) -> ComparabilityGraph {
    let n = space.size();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    for a in 0..n {
        for b in (a + 1)..n {
            if space.is_comparable(a, b) {
                let weight = space.d(a, b);
                edges.push(Edge { a, b, weight });
                adjacency[a].push((b, weight));
                adjacency[b].push((a, weight));
            }
        }
    }
    ComparabilityGraph { n, edges, adjacency }
}

/// Partition of the points into chain-equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainComponents {
    /// Component index of each point; components are numbered by smallest member.
    pub labels: Vec<usize>,
    pub components: Vec<Vec<PointId>>,
}

impl ChainComponents {
    /// Whether every pair of points is joined by a chain.
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }
}

pub fn chain_components(space: &OrderedMetricSpace) -> ChainComponents {
    components_of(&comparability_graph(space))
}

fn components_of(graph: &ComparabilityGraph) -> ChainComponents {
    let n = graph.size();
    let mut labels = vec![usize::MAX; n];
    let mut components = Vec::new();
    for root in 0..n {
        if labels[root] != usize::MAX {
            continue;
        }
        let label = components.len();
        let mut members = vec![root];
        labels[root] = label;
        let mut cursor = 0;
        while cursor < members.len() {
            let v = members[cursor];
            cursor += 1;
            for &(w, _) in graph.neighbors(v) {
                if labels[w] == usize::MAX {
                    labels[w] = label;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members.into_iter().map(PointId).collect());
    }
    ChainComponents { labels, components }
}

/// Extended metric `e`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMetric {
    n: usize,
    e: Vec<Extended>,
}

impl ChainMetric {
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Extended {
        assert!(i < self.n && j < self.n, "index out of range");
        self.e[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Extended>> {
        self.e.chunks(self.n).map(<[Extended]>::to_vec).collect()
    }

    pub fn is_everywhere_finite(&self) -> bool {
        self.e.iter().all(|v| v.is_finite())
    }

    fn from_rows(n: usize, rows: Vec<Vec<Extended>>) -> Self {
        Self { n, e: rows.into_iter().flatten().collect() }
    }
}

/// Serialized as a matrix of rows, with `"inf"` for infinite entries.
impl Serialize for ChainMetric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// All-pairs shortest paths over the comparability graph (Dijkstra per source).
pub fn chain_metric(space: &OrderedMetricSpace) -> ChainMetric {
    let graph = comparability_graph(space);
    let grid = Grid::for_weights(graph.edges().iter().map(|e| e.weight));
    let adjacency: Vec<Vec<(usize, BigUint)>> = (0..graph.size())
        .map(|i| graph.neighbors(i).iter().map(|&(j, w)| (j, grid.to_exact(w))).collect())
        .collect();
    let n = graph.size();
    let rows = (0..n)
        .into_par_iter()
        .map(|source| {
            dijkstra(&adjacency, source)
                .into_iter()
                .map(|d| d.map_or(Extended::Infinite, |k| Extended::Finite(grid.to_f64(&k))))
                .collect()
        })
        .collect();
    ChainMetric::from_rows(n, rows)
}

fn dijkstra(adjacency: &[Vec<(usize, BigUint)>], source: usize) -> Vec<Option<BigUint>> {
    let n = adjacency.len();
    let mut dist: Vec<Option<BigUint>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(BigUint::default());
    heap.push(Reverse((BigUint::default(), source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for (w, weight) in &adjacency[v] {
            if done[*w] {
                continue;
            }
            let candidate = &d + weight;
            if dist[*w].as_ref().is_none_or(|cur| candidate < *cur) {
                dist[*w] = Some(candidate.clone());
                heap.push(Reverse((candidate, *w)));
            }
        }
    }
    dist
}

/// The chain metric taken literally: the minimum over every simple chain.
///
/// Used as an oracle for [`chain_metric`]. Enumeration is factorial in the
/// number of points, hence the `cap`.
pub fn brute_force_chain_metric(space: &OrderedMetricSpace, cap: usize) -> Result<ChainMetric, ChainError> {
    let n = space.size();
    if n > cap {
        return Err(ChainError::SpaceTooLarge { n, cap });
    }
    let mut weights = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && space.is_comparable(i, j) {
                weights.push(space.d(i, j));
            }
        }
    }
    let grid = Grid::for_weights(weights);
    let mut best: Vec<Option<BigUint>> = vec![None; n * n];
    for source in 0..n {
        let mut on_chain = vec![false; n];
        on_chain[source] = true;
        best[source * n + source] = Some(BigUint::default());
        extend_chains(space, grid, source, source, &BigUint::default(), &mut on_chain, &mut best);
    }
    let e = best
        .into_iter()
        .map(|b| b.map_or(Extended::Infinite, |k| Extended::Finite(grid.to_f64(&k))))
        .collect();
    Ok(ChainMetric { n, e })
}

fn extend_chains(
    space: &OrderedMetricSpace,
    grid: Grid,
    source: usize,
    last: usize,
    length: &BigUint,
    on_chain: &mut [bool],
    best: &mut [Option<BigUint>],
) {
    let n = space.size();
    for next in 0..n {
        if on_chain[next] || !space.is_comparable(last, next) {
            continue;
        }
        let total = length + grid.to_exact(space.d(last, next));
        let slot = &mut best[source * n + next];
        if slot.as_ref().is_none_or(|b| total < *b) {
            *slot = Some(total.clone());
        }
        on_chain[next] = true;
        extend_chains(space, grid, source, next, &total, on_chain, best);
        on_chain[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{close_order, OrderKind, OrderRelation};
    use crate::testutil::{line, space_with};

    fn vee() -> OrderedMetricSpace {
        // a=0, b=5, c=1 on a line; a <= b, c <= b
        space_with(line(&[0.0, 5.0, 1.0]), &[(0, 1), (2, 1)])
    }

    #[test]
    fn discrete_order_has_no_edges() {
        let space = OrderedMetricSpace::new(line(&[0.0, 1.0, 2.0]), OrderRelation::discrete(3)).unwrap();
        assert!(comparability_graph(&space).edges().is_empty());
        let comps = chain_components(&space);
        assert_eq!(comps.components.len(), 3);
        assert!(!comps.is_connected());
    }

    #[test]
    fn total_order_gives_complete_graph() {
        let space = space_with(line(&[0.0, 1.0, 2.0, 4.0]), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(comparability_graph(&space).edges().len(), 6);
        assert!(chain_components(&space).is_connected());
    }

    #[test]
    fn vee_graph_edges() {
        let g = comparability_graph(&vee());
        assert_eq!(g.edges(), &[Edge { a: 0, b: 1, weight: 5.0 }, Edge { a: 1, b: 2, weight: 4.0 }]);
    }

    #[test]
    fn disjoint_chains_are_two_components() {
        let space = space_with(line(&[0.0, 1.0, 2.0, 3.0]), &[(0, 1), (2, 3)]);
        let comps = chain_components(&space);
        assert_eq!(comps.components, vec![vec![PointId(0), PointId(1)], vec![PointId(2), PointId(3)]]);
        let e = chain_metric(&space);
        assert_eq!(e.get(0, 2), Extended::Infinite);
        assert_eq!(e.get(0, 1), Extended::Finite(1.0));
    }

    #[test]
    fn bounded_order_is_connected() {
        // bottom 0, top 4, incomparable middle points 1, 2, 3
        let space = space_with(line(&[0.0, 1.0, 2.0, 3.0, 4.0]), &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
        assert!(chain_components(&space).is_connected());
    }

    #[test]
    fn vee_chain_metric_exceeds_d() {
        let space = vee();
        let e = chain_metric(&space);
        assert_eq!(e.get(0, 2), Extended::Finite(9.0));
        assert_eq!(space.d(0, 2), 1.0);
        assert_eq!(e.get(0, 1), Extended::Finite(5.0));
        assert_eq!(brute_force_chain_metric(&space, DEFAULT_BRUTE_FORCE_CAP).unwrap(), e);
    }

    #[test]
    fn brute_force_edge_cases() {
        let single = space_with(line(&[0.0]), &[]);
        assert_eq!(brute_force_chain_metric(&single, 9).unwrap().rows(), vec![vec![Extended::ZERO]]);
        let pair = OrderedMetricSpace::new(line(&[0.0, 1.0]), OrderRelation::discrete(2)).unwrap();
        assert_eq!(brute_force_chain_metric(&pair, 9).unwrap().get(0, 1), Extended::Infinite);
        let big = OrderedMetricSpace::new(line(&(0..10).map(f64::from).collect::<Vec<_>>()), OrderRelation::discrete(10)).unwrap();
        assert_eq!(brute_force_chain_metric(&big, 9), Err(ChainError::SpaceTooLarge { n: 10, cap: 9 }));
    }

    #[test]
    fn comparable_pairs_keep_their_distance() {
        let order = close_order(&[(0, 1), (1, 2)], 3, OrderKind::Partial).unwrap();
        let space = OrderedMetricSpace::new(line(&[0.0, 1.0, 3.0]), order).unwrap();
        let e = chain_metric(&space);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(e.get(i, j), Extended::Finite(space.d(i, j)));
            }
        }
    }
}
