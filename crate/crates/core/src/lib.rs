//! Fixed-point workbench for finite ordered metric spaces.
//!
//! Builds the chain metric of an ordered metric space, checks ordered,
//! global and conditional contraction hypotheses, runs Picard iteration,
//! and validates the reduction of the ordered contraction setting to a
//! plain Banach contraction under the chain metric.

pub mod chain;
pub mod cli;
pub mod contraction;
mod exact;
pub mod extended;
pub mod lab;
pub mod picard;
pub mod space;

pub use chain::{brute_force_chain_metric, chain_components, chain_metric, comparability_graph, ChainMetric};
pub use extended::Extended;
pub use space::{
    close_order, comparable, metric_from_embedding, validate_metric, FiniteMetric, Norm, OrderKind,
    OrderRelation, OrderedMetricSpace, PointId, SelfMap, DEFAULT_TOLERANCE,
};
