//! Theorem validators, instance generation and hypothesis-ablation search.

mod generate;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{chain_components, chain_metric, ChainMetric};
use crate::contraction::{
    check_weak_conditional_g_contractive, comparability_violation, global_contraction_factor, increasing_violation,
    is_monotone, ordered_contraction_factor, ContractionReport, GPremise,
};
use crate::extended::Extended;
use crate::picard::{check_a06, check_ao_self_closed, classify, OperatorClassification, SelfClosedReport};
use crate::space::{OrderedMetricSpace, PointId, SelfMap, SpaceError};

pub use generate::{generate_instance, GenConfig, MapModel, MetricModel, OrderModel, DEFAULT_REJECTION_BUDGET};
pub use search::{search_counterexamples, SearchConfig, SearchOutcome, SearchWitness};

/// Default α grid for T5 when no α is given: 0.1, 0.2, ..., 0.9.
pub const T5_ALPHA_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum LabError {
    #[error("invalid generator config: {reason}")]
    InvalidConfig { reason: String },
    #[error("no admissible map within the retry budget (seed {seed})")]
    GenerationBudgetExhausted { config: GenConfig, seed: u64 },
    #[error("hypothesis {id} fails, so the reduction does not apply")]
    NotApplicable { id: String },
    #[error("{drop} is not a hypothesis of {theorem}")]
    UnknownHypothesis { theorem: Theorem, drop: String },
    #[error("alpha {alpha} outside (0, 1)")]
    AlphaOutOfRange { alpha: f64 },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A space, a self-map, and point names for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub names: Vec<String>,
    pub space: OrderedMetricSpace,
    pub map: SelfMap,
    pub label: String,
    pub seed: Option<u64>,
}

impl Instance {
    /// Points are named `p0, p1, ...`.
    pub fn new(space: OrderedMetricSpace, map: SelfMap, label: impl Into<String>, seed: Option<u64>) -> Self {
        let names = (0..space.size()).map(|i| format!("p{i}")).collect();
        Self { names, space, map, label: label.into(), seed }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.space.size(), "one name per point");
        self.names = names;
        self
    }

    pub fn size(&self) -> usize {
        self.space.size()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
    T5,
}

impl Theorem {
    /// Hypothesis ids, in report order.
    pub fn hypotheses(self) -> &'static [&'static str] {
        match self {
            Theorem::T1 => &["complete", "a02", "a03", "a04", "a05", "a06"],
            Theorem::T2 => &["complete", "a02", "a06", "b02", "b03"],
            Theorem::T5 => &["c03", "ao_complete", "ao_self_closed", "c04", "c05"],
        }
    }

    /// Hypotheses that can fail on a finite space, and so can be dropped in a search.
    pub fn droppable(self) -> &'static [&'static str] {
        match self {
            Theorem::T1 => &["a02", "a03", "a04", "a05"],
            Theorem::T2 => &["a02", "b02", "b03"],
            Theorem::T5 => &["c03", "ao_self_closed", "c04", "c05"],
        }
    }

    pub fn conclusion(self) -> &'static str {
        match self {
            Theorem::T1 | Theorem::T2 => "picard_plain",
            Theorem::T5 => "picard_ordered",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T5 => "T5",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(Theorem::T1),
            "T2" => Ok(Theorem::T2),
            "T5" => Ok(Theorem::T5),
            _ => Err(format!("unknown theorem {s:?} (expected T1, T2 or T5)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    AutoSatisfied,
    NotApplicable,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn is_satisfied(self) -> bool {
        matches!(self, Status::Holds | Status::AutoSatisfied)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaTrial {
    pub alpha: f64,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    Contraction { report: ContractionReport },
    /// Weak-G checks over several α; `report` is for the smallest passing α,
    /// or the first α tried when none passes.
    AlphaGrid { trials: Vec<AlphaTrial>, report: ContractionReport },
    Pair { x: PointId, y: PointId },
    Disconnected { components: usize, x: PointId, y: PointId },
    Points { points: Vec<PointId> },
    SelfClosed { report: SelfClosedReport },
    Note { note: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisEntry {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
}

impl HypothesisEntry {
    fn new(id: &str, status: Status, evidence: Option<Evidence>) -> Self {
        Self { id: id.to_string(), status, evidence }
    }

    fn auto(id: &str, note: &str) -> Self {
        Self::new(id, Status::AutoSatisfied, Some(Evidence::Note { note: note.to_string() }))
    }
}

/// One side of a known implication between hypotheses, checked on the instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub premise: String,
    pub consequence: String,
    pub premise_holds: bool,
    pub consequence_holds: bool,
}

impl Derivation {
    pub fn is_consistent(&self) -> bool {
        !self.premise_holds || self.consequence_holds
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction {
    /// Chain metric, serialized with `"inf"` entries.
    pub chain_metric: ChainMetric,
    pub d_report: ContractionReport,
    pub e_report: ContractionReport,
    /// e-factor <= d-factor + tol and e-factor < 1.
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub hypotheses: Vec<HypothesisEntry>,
    pub hypotheses_hold: bool,
    pub conclusion: bool,
    pub classification: OperatorClassification,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub derivations: Vec<Derivation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Reduction>,
    /// The weak-G check with `d(y,Ty)` in the premise, for comparison only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_premise: Option<Evidence>,
    pub soundness_alarm: bool,
}

impl TheoremReport {
    pub fn status(&self, id: &str) -> Option<Status> {
        self.hypotheses.iter().find(|h| h.id == id).map(|h| h.status)
    }

    /// All hypotheses except `drop` are satisfied.
    pub fn holds_except(&self, drop: Option<&str>) -> bool {
        self.hypotheses.iter().all(|h| Some(h.id.as_str()) == drop || h.status.is_satisfied())
    }
}

const FINITE_COMPLETE: &str = "finite space: every Cauchy sequence is eventually constant";
const FINITE_A06: &str = "finite space: a convergent sequence is eventually constant at its limit";

fn contraction_entry(space: &OrderedMetricSpace, map: &SelfMap) -> (HypothesisEntry, ContractionReport) {
    let report = ordered_contraction_factor(space, map);
    let entry = HypothesisEntry::new(
        "a02",
        Status::from_bool(report.verdict),
        Some(Evidence::Contraction { report: report.clone() }),
    );
    (entry, report)
}

fn comparability_entry(space: &OrderedMetricSpace, map: &SelfMap) -> HypothesisEntry {
    match comparability_violation(space, map) {
        None => HypothesisEntry::new("b02", Status::Holds, None),
        Some((x, y)) => HypothesisEntry::new("b02", Status::Fails, Some(Evidence::Pair { x, y })),
    }
}

fn connectivity_entry(space: &OrderedMetricSpace) -> HypothesisEntry {
    let c = chain_components(space);
    if c.is_connected() {
        HypothesisEntry::new("b03", Status::Holds, None)
    } else {
        let evidence = Evidence::Disconnected { components: c.components.len(), x: c.components[0][0], y: c.components[1][0] };
        HypothesisEntry::new("b03", Status::Fails, Some(evidence))
    }
}

fn finish(
    theorem: Theorem,
    alpha: Option<f64>,
    mut hypotheses: Vec<HypothesisEntry>,
    classification: OperatorClassification,
    derivations: Vec<Derivation>,
) -> TheoremReport {
    let order = theorem.hypotheses();
    hypotheses.sort_by_key(|h| order.iter().position(|id| *id == h.id));
    debug_assert_eq!(hypotheses.iter().map(|h| h.id.as_str()).collect::<Vec<_>>(), order);
    let hypotheses_hold = hypotheses.iter().all(|h| h.status.is_satisfied());
    let conclusion = match theorem {
        Theorem::T1 | Theorem::T2 => classification.picard_plain,
        Theorem::T5 => classification.picard_ordered,
    };
    let soundness_alarm =
        (hypotheses_hold && !conclusion) || derivations.iter().any(|d| !d.is_consistent());
    TheoremReport {
        theorem,
        alpha,
        hypotheses,
        hypotheses_hold,
        conclusion,
        classification,
        derivations,
        reduction: None,
        dual_premise: None,
        soundness_alarm,
    }
}

/// Contractive on ordered pairs, `<>`-increasing and chain-connected imply
/// a Picard operator. When the hypotheses hold, the reduction to a global
/// contraction under the chain metric is also carried out; its failure is a
/// soundness alarm as well.
pub fn validate_theorem2(instance: &Instance, tol: f64) -> Result<TheoremReport, LabError> {
    let (space, map) = (&instance.space, &instance.map);
    map.check_against(space)?;
    let (a02, d_report) = contraction_entry(space, map);
    let hypotheses = vec![
        HypothesisEntry::auto("complete", FINITE_COMPLETE),
        a02,
        HypothesisEntry::auto("a06", FINITE_A06),
        comparability_entry(space, map),
        connectivity_entry(space),
    ];
    let mut report = finish(Theorem::T2, None, hypotheses, classify(space, map)?, Vec::new());
    if report.hypotheses_hold {
        let reduction = reduction_from(space, map, d_report, tol);
        report.soundness_alarm |= !reduction.verdict;
        report.reduction = Some(reduction);
    }
    Ok(report)
}

/// Monotone, contractive on ordered pairs, with common bounds for every pair.
/// Also records the implications a04 => b02 and a05 => b03 on the instance.
pub fn validate_theorem1(instance: &Instance, _tol: f64) -> Result<TheoremReport, LabError> {
    let (space, map) = (&instance.space, &instance.map);
    map.check_against(space)?;
    let (a02, _) = contraction_entry(space, map);
    let classification = classify(space, map)?;

    let comparable = classification.comparable_starts.clone();
    let a03 = HypothesisEntry::new(
        "a03",
        Status::from_bool(!comparable.is_empty()),
        Some(Evidence::Points { points: comparable }),
    );

    let monotone = is_monotone(space, map).is_monotone();
    let a04 = if monotone {
        HypothesisEntry::new("a04", Status::Holds, None)
    } else {
        let (x, y) = increasing_violation(space, map).expect("not monotone, so not increasing");
        HypothesisEntry::new("a04", Status::Fails, Some(Evidence::Pair { x, y }))
    };

    let unbounded = missing_bounds(space);
    let a05 = match unbounded {
        None => HypothesisEntry::new("a05", Status::Holds, None),
        Some((x, y)) => HypothesisEntry::new("a05", Status::Fails, Some(Evidence::Pair { x, y })),
    };

    let b02 = comparability_entry(space, map).status.is_satisfied();
    let b03 = chain_components(space).is_connected();
    let derivations = vec![
        Derivation { premise: "a04".into(), consequence: "b02".into(), premise_holds: monotone, consequence_holds: b02 },
        Derivation {
            premise: "a05".into(),
            consequence: "b03".into(),
            premise_holds: unbounded.is_none(),
            consequence_holds: b03,
        },
    ];
    let hypotheses = vec![
        HypothesisEntry::auto("complete", FINITE_COMPLETE),
        a02,
        a03,
        a04,
        a05,
        HypothesisEntry::auto("a06", FINITE_A06),
    ];
    debug_assert!(check_a06(space));
    Ok(finish(Theorem::T1, None, hypotheses, classification, derivations))
}

/// First pair `(x, y)` without both a common lower and a common upper bound.
fn missing_bounds(space: &OrderedMetricSpace) -> Option<(PointId, PointId)> {
    let n = space.size();
    (0..n)
        .flat_map(|x| (x..n).map(move |y| (x, y)))
        .find(|&(x, y)| {
            let lower = (0..n).any(|u| space.le(u, x) && space.le(u, y));
            let upper = (0..n).any(|v| space.le(x, v) && space.le(y, v));
            !(lower && upper)
        })
        .map(|(x, y)| (PointId(x), PointId(y)))
}

/// Weakly conditional G-contraction at `alpha` (or at any α of the default
/// grid), an ascending start, an increasing map and self-closedness imply a
/// Picard operator in the ordered sense.
pub fn validate_theorem5(
    instance: &Instance,
    alpha: Option<f64>,
    compare_dual: bool,
    tol: f64,
) -> Result<TheoremReport, LabError> {
    let (space, map) = (&instance.space, &instance.map);
    map.check_against(space)?;
    let alphas: Vec<f64> = match alpha {
        Some(a) if a > 0.0 && a < 1.0 => vec![a],
        Some(a) => return Err(LabError::AlphaOutOfRange { alpha: a }),
        None => T5_ALPHA_GRID.to_vec(),
    };
    let (c03_holds, c03_evidence, chosen) = alpha_grid(space, map, &alphas, GPremise::AsWritten, tol);
    let classification = classify(space, map)?;

    let starts = classification.ascending_starts.clone();
    let c04 = HypothesisEntry::new("c04", Status::from_bool(!starts.is_empty()), Some(Evidence::Points { points: starts }));
    let c05 = match increasing_violation(space, map) {
        None => HypothesisEntry::new("c05", Status::Holds, None),
        Some((x, y)) => HypothesisEntry::new("c05", Status::Fails, Some(Evidence::Pair { x, y })),
    };
    let closed = check_ao_self_closed(space, map)?;
    let self_closed = HypothesisEntry::new(
        "ao_self_closed",
        Status::from_bool(closed.verdict),
        Some(Evidence::SelfClosed { report: closed }),
    );
    let hypotheses = vec![
        HypothesisEntry::new("c03", Status::from_bool(c03_holds), Some(c03_evidence)),
        HypothesisEntry::auto("ao_complete", "finite space: ascending orbits attain their limits"),
        self_closed,
        c04,
        c05,
    ];
    let mut report = finish(Theorem::T5, chosen, hypotheses, classification, Vec::new());
    if compare_dual {
        report.dual_premise = Some(alpha_grid(space, map, &alphas, GPremise::DualImage, tol).1);
    }
    Ok(report)
}

fn alpha_grid(
    space: &OrderedMetricSpace,
    map: &SelfMap,
    alphas: &[f64],
    premise: GPremise,
    tol: f64,
) -> (bool, Evidence, Option<f64>) {
    let mut trials = Vec::with_capacity(alphas.len());
    let mut chosen: Option<ContractionReport> = None;
    let mut first: Option<ContractionReport> = None;
    for &alpha in alphas {
        let r = check_weak_conditional_g_contractive(space, map, alpha, premise, tol).expect("alpha in (0, 1)");
        trials.push(AlphaTrial { alpha, verdict: r.verdict });
        if r.verdict && chosen.is_none() {
            chosen = Some(r.clone());
        }
        first.get_or_insert(r);
    }
    let holds = chosen.is_some();
    let best = chosen.as_ref().and_then(|r| r.alpha);
    let report = chosen.or(first).expect("at least one alpha");
    (holds, Evidence::AlphaGrid { trials, report }, best)
}

fn reduction_from(space: &OrderedMetricSpace, map: &SelfMap, d_report: ContractionReport, tol: f64) -> Reduction {
    let e = chain_metric(space);
    let e_report = global_contraction_factor(&e, map);
    let verdict = match (e_report.alpha_star, d_report.alpha_star) {
        (Extended::Finite(ef), Extended::Finite(df)) => !e_report.extended_regime && ef <= df + tol && ef < 1.0,
        _ => false,
    };
    Reduction { chain_metric: e, d_report, e_report, verdict }
}

/// Transfers the ordered contraction factor to a global one under the chain
/// metric. Fails with the first T2 hypothesis that does not hold.
pub fn reduce_to_banach(instance: &Instance, tol: f64) -> Result<Reduction, LabError> {
    let (space, map) = (&instance.space, &instance.map);
    map.check_against(space)?;
    let (a02, d_report) = contraction_entry(space, map);
    for entry in [a02, comparability_entry(space, map), connectivity_entry(space)] {
        if !entry.status.is_satisfied() {
            return Err(LabError::NotApplicable { id: entry.id });
        }
    }
    Ok(reduction_from(space, map, d_report, tol))
}

/// Runs the validator for `theorem`; `alpha` only applies to T5.
pub fn validate(instance: &Instance, theorem: Theorem, alpha: Option<f64>, tol: f64) -> Result<TheoremReport, LabError> {
    match theorem {
        Theorem::T1 => validate_theorem1(instance, tol),
        Theorem::T2 => validate_theorem2(instance, tol),
        Theorem::T5 => validate_theorem5(instance, alpha, false, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{close_order, OrderKind, OrderRelation, DEFAULT_TOLERANCE};
    use crate::testutil::{line, space_with};

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn three_point() -> Instance {
        let space = space_with(line(&[0.0, 1.0, 3.0]), &[(0, 1), (1, 2)]);
        Instance::new(space, SelfMap::new(vec![0, 0, 1]).unwrap(), "three point", None)
    }

    #[test]
    fn theorem2_on_three_point_instance() {
        let r = validate_theorem2(&three_point(), TOL).unwrap();
        assert!(r.hypotheses_hold && r.conclusion && !r.soundness_alarm);
        let ids: Vec<&str> = r.hypotheses.iter().map(|h| h.id.as_str()).collect();
        assert_eq!(ids, Theorem::T2.hypotheses());
        let red = r.reduction.unwrap();
        assert!(red.verdict);
        assert_eq!(red.e_report.alpha_star, Extended::Finite(0.5));
        assert_eq!(red.d_report.alpha_star, Extended::Finite(0.5));
    }

    #[test]
    fn theorem2_identity_fails_contraction() {
        let space = space_with(line(&[0.0, 1.0]), &[(0, 1)]);
        let inst = Instance::new(space, SelfMap::identity(2), "identity", None);
        let r = validate_theorem2(&inst, TOL).unwrap();
        assert_eq!(r.status("a02"), Some(Status::Fails));
        assert!(!r.hypotheses_hold && !r.conclusion && !r.soundness_alarm);
        assert!(matches!(reduce_to_banach(&inst, TOL), Err(LabError::NotApplicable { id }) if id == "a02"));
    }

    #[test]
    fn theorem2_disjoint_chains() {
        // 0 <= 1 and 2 <= 3; each chain collapses to its own bottom.
        let space = space_with(line(&[0.0, 1.0, 5.0, 6.0]), &[(0, 1), (2, 3)]);
        let inst = Instance::new(space, SelfMap::new(vec![0, 0, 2, 2]).unwrap(), "chains", None);
        let r = validate_theorem2(&inst, TOL).unwrap();
        assert_eq!(r.status("a02"), Some(Status::Holds));
        assert_eq!(r.status("b02"), Some(Status::Holds));
        assert_eq!(r.status("b03"), Some(Status::Fails));
        assert_eq!(r.classification.fixed_points.len(), 2);
        assert!(!r.conclusion && !r.soundness_alarm);
        assert!(r.holds_except(Some("b03")));
        assert!(matches!(reduce_to_banach(&inst, TOL), Err(LabError::NotApplicable { id }) if id == "b03"));
    }

    #[test]
    fn reduction_on_vee_order() {
        // a <= b, c <= b, all mapped to b.
        let space = space_with(line(&[0.0, 2.0, 3.0]), &[(0, 1), (2, 1)]);
        let inst = Instance::new(space, SelfMap::constant(3, 1), "vee", None);
        let red = reduce_to_banach(&inst, TOL).unwrap();
        assert!(red.verdict);
        assert_eq!(red.e_report.alpha_star, Extended::ZERO);
        let comp = space_with(line(&[0.0, 1.0, 2.0]), &[(0, 1), (1, 2)]);
        let inst = Instance::new(comp, SelfMap::new(vec![1, 0, 1]).unwrap(), "not b02", None);
        assert!(matches!(reduce_to_banach(&inst, TOL), Err(LabError::NotApplicable { .. })));
    }

    #[test]
    fn theorem1_cases() {
        // A lattice: 0 <= 1, 0 <= 2, 1 <= 3, 2 <= 3, with everything mapped to 0.
        let space = space_with(line(&[0.0, 1.0, 1.5, 2.0]), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let inst = Instance::new(space, SelfMap::constant(4, 0), "lattice", None);
        let r = validate_theorem1(&inst, TOL).unwrap();
        assert!(r.hypotheses_hold && r.conclusion && !r.soundness_alarm);
        assert!(r.derivations.iter().all(|d| d.premise_holds && d.consequence_holds));

        let antichain = OrderedMetricSpace::new(line(&[0.0, 1.0]), OrderRelation::discrete(2)).unwrap();
        let inst = Instance::new(antichain, SelfMap::constant(2, 0), "antichain", None);
        let r = validate_theorem1(&inst, TOL).unwrap();
        assert_eq!(r.status("a05"), Some(Status::Fails));
    }

    #[test]
    fn theorem5_cases() {
        let order = close_order(&[(0, 1), (1, 2)], 3, OrderKind::Quasi).unwrap();
        let quasi = OrderedMetricSpace::new(line(&[0.0, 1.0, 3.0]), order).unwrap();
        let inst = Instance::new(quasi, SelfMap::constant(3, 2), "constant", None);
        let r = validate_theorem5(&inst, None, true, TOL).unwrap();
        assert!(r.hypotheses_hold && r.conclusion && !r.soundness_alarm);
        assert_eq!(r.alpha, Some(0.1));
        assert!(r.dual_premise.is_some());

        let chain = space_with(line(&[0.0, 1.0]), &[(0, 1)]);
        let inst = Instance::new(chain, SelfMap::identity(2), "identity", None);
        let r = validate_theorem5(&inst, None, false, TOL).unwrap();
        assert_eq!(r.status("c03"), Some(Status::Fails));
        let Some(Evidence::AlphaGrid { trials, .. }) = &r.hypotheses[0].evidence else { panic!() };
        assert!(trials.iter().all(|t| !t.verdict));
        assert!(!r.conclusion && !r.soundness_alarm);
        assert!(validate_theorem5(&inst, Some(1.0), false, TOL).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::space::DEFAULT_TOLERANCE;
    use proptest::prelude::*;

    fn arb_config() -> impl Strategy<Value = GenConfig> {
        (
            1usize..7,
            prop_oneof![
                Just(OrderModel::Total),
                (0.1f64..0.7).prop_map(|p| OrderModel::RandomDag { p }),
                Just(OrderModel::Lattice),
                Just(OrderModel::Antichain),
                (0.1f64..0.5).prop_map(|p| OrderModel::Quasi { p }),
            ],
            prop_oneof![
                Just(MetricModel::Line),
                Just(MetricModel::Embedding { dim: 2, norm: crate::space::Norm::Euclidean }),
                Just(MetricModel::RandomRepaired),
            ],
            prop_oneof![
                Just(MapModel::Random),
                Just(MapModel::Increasing),
                Just(MapModel::Constant),
                (0.3f64..0.95).prop_map(|alpha_target| MapModel::MonotoneRejection { alpha_target, budget: 500 }),
            ],
        )
            .prop_map(|(n, order, metric, map)| GenConfig { n, order, metric, map })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn validators_never_alarm(config in arb_config(), seed in any::<u64>()) {
            let Ok(inst) = generate_instance(&config, seed) else { return Ok(()) };
            let t2 = validate_theorem2(&inst, DEFAULT_TOLERANCE).unwrap();
            prop_assert!(!t2.soundness_alarm);
            if t2.hypotheses_hold {
                let red = t2.reduction.as_ref().unwrap();
                prop_assert!(red.verdict && t2.classification.picard_plain);
                prop_assert!(red.e_report.alpha_star <= red.d_report.alpha_star + Extended::Finite(1e-9));
            }
            let t5 = validate_theorem5(&inst, None, false, DEFAULT_TOLERANCE).unwrap();
            prop_assert!(!t5.soundness_alarm);
            prop_assert!(!t5.hypotheses_hold || t5.classification.picard_ordered);
        }

        #[test]
        fn generation_is_pure(config in arb_config(), seed in any::<u64>()) {
            prop_assert_eq!(generate_instance(&config, seed), generate_instance(&config, seed));
        }
    }
}
