//! Finite metric spaces, order relations and the comparability relation.
//!
//! Every value here is validated on construction and immutable afterwards.
//! Bulk data (matrices, pair lists, map images) is indexed by plain `usize`;
//! single-point queries go through [`PointId`], which is range-checked
//! against the space it is used with.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default slack for every metric/contraction inequality.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Index of a point in a finite space of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum MetricError {
    #[error("metric must contain at least one point")]
    EmptySpace,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry ({i},{i}) is {value}, expected 0")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("entry ({i},{j}) is negative: {value}")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("matrix is not symmetric at ({i},{j}): {forward} vs {backward}")]
    Asymmetric { i: usize, j: usize, forward: f64, backward: f64 },
    #[error("distinct points {i} and {j} are at distance 0")]
    ZeroDistanceDistinct { i: usize, j: usize },
    #[error("triangle inequality fails: d({i},{j}) exceeds d({i},{via}) + d({via},{j}) by {defect}")]
    TriangleViolation { i: usize, j: usize, via: usize, defect: f64 },
    #[error("coordinate row {row} has dimension {len}, expected {expected}")]
    RaggedCoordinates { row: usize, len: usize, expected: usize },
    #[error("embedding dimension must be at least 1")]
    EmptyCoordinates,
    #[error("coordinate ({row},{col}) is not finite")]
    NonFiniteCoordinate { row: usize, col: usize },
    #[error("points {i} and {j} have identical coordinates")]
    DuplicatePoint { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum OrderError {
    #[error("point {index} out of range for a space of {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("antisymmetry fails: {i} <= {j} and {j} <= {i} with {i} != {j}")]
    AntisymmetryViolation { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum SpaceError {
    #[error("point {index} out of range for a space of {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("metric has {metric} points but order has {order}")]
    SizeMismatch { metric: usize, order: usize },
    #[error("map has {map} entries but the space has {space} points")]
    MapSizeMismatch { space: usize, map: usize },
    #[error("map sends {point} to {image}, outside a space of {size} points")]
    ImageOutOfRange { point: usize, image: usize, size: usize },
}

/// A validated metric on `n` points, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric {
    n: usize,
    dist: Vec<f64>,
}

impl FiniteMetric {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Distance between two indices. Panics if either is out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "index out of range");
        self.dist[i * self.n + j]
    }

    pub fn distance(&self, x: PointId, y: PointId) -> Result<f64, SpaceError> {
        check_id(x, self.n)?;
        check_id(y, self.n)?;
        Ok(self.get(x.0, y.0))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.dist
    }
}

/// Checks the metric axioms on a square matrix.
///
/// Symmetry, the zero diagonal and sufficiency are exact requirements; only
/// the triangle inequality is allowed `tol` slack, since induced float norms
/// can miss it by a few ulps. The first failing triple in `(i, j, via)`
/// lexicographic order is reported.
pub fn validate_metric(matrix: &[Vec<f64>], tol: f64) -> Result<FiniteMetric, MetricError> {
    let n = matrix.len();
    if n == 0 {
        return Err(MetricError::EmptySpace);
    }
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(MetricError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    let dist: Vec<f64> = matrix.iter().flatten().copied().collect();
    validate_flat(n, dist, tol)
}

pub(crate) fn validate_flat(n: usize, dist: Vec<f64>, tol: f64) -> Result<FiniteMetric, MetricError> {
    debug_assert_eq!(dist.len(), n * n);
    let at = |i: usize, j: usize| dist[i * n + j];
    for i in 0..n {
        for j in 0..n {
            let v = at(i, j);
            if !v.is_finite() {
                return Err(MetricError::NonFinite { i, j });
            }
            if i == j && v != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i, value: v });
            }
            if v < 0.0 {
                return Err(MetricError::NegativeDistance { i, j, value: v });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if at(i, j) != at(j, i) {
                return Err(MetricError::Asymmetric { i, j, forward: at(i, j), backward: at(j, i) });
            }
            if at(i, j) == 0.0 {
                return Err(MetricError::ZeroDistanceDistinct { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for via in 0..n {
                let defect = at(i, j) - (at(i, via) + at(via, j));
                if defect > tol {
                    return Err(MetricError::TriangleViolation { i, j, via, defect });
                }
            }
        }
    }
    Ok(FiniteMetric { n, dist })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Norm {
    fn of_difference(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(p, q)| (p - q).abs());
        match self {
            Norm::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Manhattan => diffs.sum(),
            Norm::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// Metric induced by a norm on point coordinates.
pub fn metric_from_embedding(coords: &[Vec<f64>], norm: Norm) -> Result<FiniteMetric, MetricError> {
    let n = coords.len();
    if n == 0 {
        return Err(MetricError::EmptySpace);
    }
    let k = coords[0].len();
    if k == 0 {
        return Err(MetricError::EmptyCoordinates);
    }
    for (row, c) in coords.iter().enumerate() {
        if c.len() != k {
            return Err(MetricError::RaggedCoordinates { row, len: c.len(), expected: k });
        }
        if let Some(col) = c.iter().position(|v| !v.is_finite()) {
            return Err(MetricError::NonFiniteCoordinate { row, col });
        }
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if coords[i] == coords[j] {
                return Err(MetricError::DuplicatePoint { i, j });
            }
            let v = norm.of_difference(&coords[i], &coords[j]);
            if v == 0.0 {
                // Distinct coordinates whose difference underflows.
                return Err(MetricError::DuplicatePoint { i, j });
            }
            dist[i * n + j] = v;
            dist[j * n + i] = v;
        }
    }
    // sqrt and summation rounding can break the triangle inequality by a few
    // ulps, so scale the slack with the largest distance.
    let scale = dist.iter().copied().fold(1.0, f64::max);
    validate_flat(n, dist, 64.0 * f64::EPSILON * scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Quasi,
    Partial,
}

/// A reflexive, transitive relation stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRelation {
    n: usize,
    leq: Vec<bool>,
    kind: OrderKind,
}

impl OrderRelation {
    /// The identity relation: every point is related only to itself.
    pub fn discrete(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Self { n, leq, kind: OrderKind::Partial }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// `i <= j`. Panics if either index is out of range.
    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "index out of range");
        self.leq[i * self.n + j]
    }

    /// All related pairs `(i, j)` with `i != j`, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.le(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.le(i, j) || self.le(j, i)))
    }
}

/// Reflexive-transitive closure of `pairs` (each `(i, j)` meaning `i <= j`).
///
/// In partial mode the closure must be antisymmetric; the first offending
/// pair `i < j` is reported.
pub fn close_order(pairs: &[(usize, usize)], n: usize, kind: OrderKind) -> Result<OrderRelation, OrderError> {
    let mut rel = OrderRelation::discrete(n);
    rel.kind = kind;
    for &(i, j) in pairs {
        for index in [i, j] {
            if index >= n {
                return Err(OrderError::PointOutOfRange { index, size: n });
            }
        }
        rel.leq[i * n + j] = true;
    }
    // Warshall
    for k in 0..n {
        for i in 0..n {
            if !rel.leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if rel.leq[k * n + j] {
                    rel.leq[i * n + j] = true;
                }
            }
        }
    }
    if kind == OrderKind::Partial {
        for i in 0..n {
            for j in (i + 1)..n {
                if rel.leq[i * n + j] && rel.leq[j * n + i] {
                    return Err(OrderError::AntisymmetryViolation { i, j });
                }
            }
        }
    }
    Ok(rel)
}

/// The triple (X, d, <=): a metric and an order on the same point set.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedMetricSpace {
    metric: FiniteMetric,
    order: OrderRelation,
}

impl OrderedMetricSpace {
    pub fn new(metric: FiniteMetric, order: OrderRelation) -> Result<Self, SpaceError> {
        if metric.size() != order.size() {
            return Err(SpaceError::SizeMismatch { metric: metric.size(), order: order.size() });
        }
        Ok(Self { metric, order })
    }

    pub fn size(&self) -> usize {
        self.metric.size()
    }

    pub fn metric(&self) -> &FiniteMetric {
        &self.metric
    }

    pub fn order(&self) -> &OrderRelation {
        &self.order
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.metric.get(i, j)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.order.le(i, j)
    }

    /// Unchecked comparability on raw indices.
    #[inline]
    pub fn is_comparable(&self, i: usize, j: usize) -> bool {
        self.order.le(i, j) || self.order.le(j, i)
    }

    /// `x <> y`: either `x <= y` or `y <= x`.
    pub fn comparable(&self, x: PointId, y: PointId) -> Result<bool, SpaceError> {
        check_id(x, self.size())?;
        check_id(y, self.size())?;
        Ok(self.is_comparable(x.0, y.0))
    }

    pub fn point(&self, index: usize) -> Result<PointId, SpaceError> {
        check_id(PointId(index), self.size())
    }
}

/// Free function form of [`OrderedMetricSpace::comparable`].
pub fn comparable(space: &OrderedMetricSpace, x: PointId, y: PointId) -> Result<bool, SpaceError> {
    space.comparable(x, y)
}

fn check_id(id: PointId, size: usize) -> Result<PointId, SpaceError> {
    if id.0 < size {
        Ok(id)
    } else {
        Err(SpaceError::PointOutOfRange { index: id.0, size })
    }
}

/// A total map `T: X -> X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelfMap {
    image: Vec<usize>,
}

impl SelfMap {
    pub fn new(image: Vec<usize>) -> Result<Self, SpaceError> {
        let size = image.len();
        if let Some((point, &image)) = image.iter().enumerate().find(|(_, &y)| y >= size) {
            return Err(SpaceError::ImageOutOfRange { point, image, size });
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn constant(n: usize, c: usize) -> Self {
        assert!(c < n, "constant value out of range");
        Self { image: vec![c; n] }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn check_against(&self, space: &OrderedMetricSpace) -> Result<(), SpaceError> {
        if self.size() != space.size() {
            return Err(SpaceError::MapSizeMismatch { space: space.size(), map: self.size() });
        }
        Ok(())
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn coords() -> impl Strategy<Value = Vec<Vec<f64>>> {
        (1usize..8, 1usize..4).prop_flat_map(|(n, k)| {
            prop::collection::vec(prop::collection::vec(-100.0f64..100.0, k), n)
        })
    }

    fn pair_lists() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..8).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..12)))
    }

    proptest! {
        #[test]
        fn embedding_output_validates(c in coords(), norm in prop_oneof![
            Just(Norm::Euclidean), Just(Norm::Manhattan), Just(Norm::Chebyshev)
        ]) {
            if let Ok(m) = metric_from_embedding(&c, norm) {
                prop_assert!(validate_metric(&m.rows(), DEFAULT_TOLERANCE).is_ok());
            }
        }

        #[test]
        fn closure_is_idempotent((n, pairs) in pair_lists()) {
            let rel = close_order(&pairs, n, OrderKind::Quasi).unwrap();
            let again = close_order(&rel.pairs(), n, OrderKind::Quasi).unwrap();
            prop_assert_eq!(&rel, &again);
            for i in 0..n {
                prop_assert!(rel.le(i, i));
                for j in 0..n {
                    for k in 0..n {
                        prop_assert!(!(rel.le(i, j) && rel.le(j, k)) || rel.le(i, k));
                    }
                }
            }
        }

        #[test]
        fn comparability_reflexive_symmetric((n, pairs) in pair_lists()) {
            let rel = close_order(&pairs, n, OrderKind::Quasi).unwrap();
            let coords: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64]).collect();
            let space = OrderedMetricSpace::new(
                metric_from_embedding(&coords, Norm::Euclidean).unwrap(), rel).unwrap();
            for i in 0..n {
                prop_assert!(space.is_comparable(i, i));
                for j in 0..n {
                    prop_assert_eq!(space.is_comparable(i, j), space.is_comparable(j, i));
                }
            }
        }
    }
}
