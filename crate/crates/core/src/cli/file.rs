//! The JSON instance file: named points, a metric, an order and a map.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lab::Instance;
use crate::space::{
    close_order, metric_from_embedding, validate_flat, MetricError, Norm, OrderError, OrderKind, OrderedMetricSpace,
    SelfMap, SpaceError,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    /// Row-major `n * n` distances.
    Matrix(Vec<f64>),
    Embedding { coords: Vec<Vec<f64>>, norm: Norm },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpec {
    pub kind: OrderKind,
    /// `[a, b]` means `a <= b`.
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub points: Vec<String>,
    pub metric: MetricSpec,
    pub order: OrderSpec,
    pub map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "error", content = "detail", rename_all = "snake_case")]
pub enum InstanceError {
    #[error("instance has no points")]
    NoPoints,
    #[error("point name {name:?} appears twice")]
    DuplicateName { name: String },
    #[error("unknown point {name:?}")]
    UnknownPoint { name: String },
    #[error("matrix has {got} entries, expected {expected}")]
    MatrixLength { expected: usize, got: usize },
    #[error("embedding has {got} coordinate vectors for {expected} points")]
    EmbeddingLength { expected: usize, got: usize },
    #[error("map has no image for point {name:?}")]
    MapNotTotal { name: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl InstanceFile {
    pub fn to_instance(&self, tol: f64) -> Result<Instance, InstanceError> {
        let n = self.points.len();
        if n == 0 {
            return Err(InstanceError::NoPoints);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in self.points.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(InstanceError::DuplicateName { name: name.clone() });
            }
        }
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| InstanceError::UnknownPoint { name: name.into() });

        let metric = match &self.metric {
            MetricSpec::Matrix(flat) => {
                if flat.len() != n * n {
                    return Err(InstanceError::MatrixLength { expected: n * n, got: flat.len() });
                }
                validate_flat(n, flat.clone(), tol)?
            }
            MetricSpec::Embedding { coords, norm } => {
                if coords.len() != n {
                    return Err(InstanceError::EmbeddingLength { expected: n, got: coords.len() });
                }
                metric_from_embedding(coords, *norm)?
            }
        };
        let pairs = self
            .order
            .pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, InstanceError>>()?;
        let order = close_order(&pairs, n, self.order.kind)?;
        for from in self.map.keys() {
            lookup(from)?;
        }
        let image = self
            .points
            .iter()
            .map(|p| match self.map.get(p) {
                Some(to) => lookup(to),
                None => Err(InstanceError::MapNotTotal { name: p.clone() }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let space = OrderedMetricSpace::new(metric, order)?;
        let label = self.label.clone().unwrap_or_default();
        Ok(Instance::new(space, SelfMap::new(image)?, label, self.seed).with_names(self.points.clone()))
    }

    /// Matrix form; order pairs are the non-reflexive related pairs.
    pub fn from_instance(instance: &Instance) -> Self {
        let names = &instance.names;
        let order = instance.space.order();
        Self {
            points: names.clone(),
            metric: MetricSpec::Matrix(instance.space.metric().as_flat().to_vec()),
            order: OrderSpec {
                kind: order.kind(),
                pairs: order.pairs().into_iter().map(|(a, b)| (names[a].clone(), names[b].clone())).collect(),
            },
            map: names.iter().enumerate().map(|(i, p)| (p.clone(), names[instance.map.apply(i)].clone())).collect(),
            label: (!instance.label.is_empty()).then(|| instance.label.clone()),
            seed: instance.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::DEFAULT_TOLERANCE;

    fn parse(s: &str) -> InstanceFile {
        serde_json::from_str(s).unwrap()
    }

    const THREE: &str = r#"{
        "points": ["a", "b", "c"],
        "metric": {"matrix": [0, 1, 3, 1, 0, 2, 3, 2, 0]},
        "order": {"kind": "partial", "pairs": [["a", "b"], ["b", "c"]]},
        "map": {"a": "a", "b": "a", "c": "b"}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let file = parse(THREE);
        let inst = file.to_instance(DEFAULT_TOLERANCE).unwrap();
        assert_eq!(inst.map.image(), &[0, 0, 1]);
        assert!(inst.space.le(0, 2));
        let back = InstanceFile::from_instance(&inst);
        assert_eq!(back.to_instance(DEFAULT_TOLERANCE).unwrap(), inst);
        let text = serde_json::to_string(&back).unwrap();
        assert_eq!(parse(&text), back);
    }

    #[test]
    fn embedding_form() {
        let file = parse(
            r#"{"points": ["x", "y"], "metric": {"embedding": {"coords": [[0, 0], [3, 4]], "norm": "euclidean"}},
                "order": {"kind": "quasi", "pairs": []}, "map": {"x": "y", "y": "y"}, "label": "e"}"#,
        );
        let inst = file.to_instance(DEFAULT_TOLERANCE).unwrap();
        assert_eq!(inst.space.d(0, 1), 5.0);
        assert_eq!(inst.label, "e");
    }

    #[test]
    fn validation_errors() {
        let mut f = parse(THREE);
        f.map.remove("c");
        assert_eq!(f.to_instance(1e-9), Err(InstanceError::MapNotTotal { name: "c".into() }));
        let mut f = parse(THREE);
        f.order.pairs.push(("a".into(), "zzz".into()));
        assert_eq!(f.to_instance(1e-9), Err(InstanceError::UnknownPoint { name: "zzz".into() }));
        let mut f = parse(THREE);
        f.metric = MetricSpec::Matrix(vec![0.0, 1.0, 1.0]);
        assert!(matches!(f.to_instance(1e-9), Err(InstanceError::MatrixLength { expected: 9, got: 3 })));
        let mut f = parse(THREE);
        f.metric = MetricSpec::Matrix(vec![0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0]);
        assert!(matches!(f.to_instance(1e-9), Err(InstanceError::Metric(MetricError::TriangleViolation { .. }))));
        let mut f = parse(THREE);
        f.order.pairs.push(("c".into(), "a".into()));
        assert!(matches!(f.to_instance(1e-9), Err(InstanceError::Order(_))));
        let mut f = parse(THREE);
        f.points[1] = "a".into();
        assert!(matches!(f.to_instance(1e-9), Err(InstanceError::DuplicateName { .. })));
        assert!(serde_json::from_str::<InstanceFile>(r#"{"points": ["a"], "extra": 1}"#).is_err());
    }
}
