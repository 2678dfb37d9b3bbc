//! Contraction and monotonicity hypotheses, with extremal factors and witnesses.
//!
//! Every pair scan runs in lexicographic `(x, y)` order; extremal pairs are
//! chosen by value with ties going to the smallest pair, so witnesses are
//! stable across runs.

mod alpha;
mod profile;
mod suzuki;

use serde::{Deserialize, Serialize};

use crate::chain::ChainMetric;
use crate::extended::Extended;
use crate::space::{FiniteMetric, OrderedMetricSpace, PointId, SelfMap};

pub use alpha::{minimal_alpha, DEFAULT_GRID_STEP};
pub use profile::{
    check_property_p, comparison_profile, profile_bound_violation, ProfileError, PropertyPReport, StepFunction,
};
pub use suzuki::{
    check_conditional_f_contractive, check_weak_conditional_g_contractive, suzuki_f, suzuki_g, DomainError,
    GPremise, GOLDEN_BREAK, SQRT_HALF,
};

/// Anything that can serve as a (possibly extended) distance on `0..size`.
pub trait DistanceTable {
    fn size(&self) -> usize;
    fn distance(&self, i: usize, j: usize) -> Extended;
}

impl DistanceTable for FiniteMetric {
    fn size(&self) -> usize {
        FiniteMetric::size(self)
    }

    fn distance(&self, i: usize, j: usize) -> Extended {
        Extended::Finite(self.get(i, j))
    }
}

impl DistanceTable for ChainMetric {
    fn size(&self) -> usize {
        ChainMetric::size(self)
    }

    fn distance(&self, i: usize, j: usize) -> Extended {
        self.get(i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractionKind {
    /// `d(Tx,Ty) <= a d(x,y)` for `x <= y`.
    OrderedD,
    /// `e(Tx,Ty) <= a e(x,y)` for all pairs, under a chosen metric.
    GlobalE,
    /// Conditional contraction with threshold function F.
    SuzukiF,
    /// Weakly conditional contraction on comparable pairs with G.
    WeakG,
    /// `f(t) <= a t` for the comparison profile `f`.
    ComparisonProfile,
}

/// How a witness pair fails its check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// Premise holds and `lhs > rhs + tol`.
    Exceeds,
    /// `lhs >= rhs` with `alpha = 1`: the ratio is not below one.
    NotContracting,
    /// The pair is at infinite distance, outside any genuine metric.
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: PointId,
    pub y: PointId,
    pub alpha: f64,
    pub lhs: Extended,
    pub rhs: Extended,
    pub violation: Violation,
}

impl Witness {
    /// Whether `lhs`/`rhs` as recorded constitute a violation.
    pub fn is_violation(&self, tol: f64) -> bool {
        match self.violation {
            Violation::Exceeds => exceeds(self.lhs, self.rhs, tol),
            Violation::NotContracting => self.lhs >= self.rhs,
            Violation::Unbounded => self.rhs == Extended::Infinite,
        }
    }

    /// Re-evaluates the pair under `check` and confirms the same violation,
    /// with `lhs`/`rhs` matching to within `1e-12`.
    pub fn reproduces(&self, space: &OrderedMetricSpace, map: &SelfMap, check: Check<'_>, tol: f64) -> bool {
        let eval = evaluate_pair(space, map, check, self.x.0, self.y.0, self.alpha);
        let close = |a: Extended, b: Extended| match (a, b) {
            (Extended::Finite(p), Extended::Finite(q)) => (p - q).abs() <= 1e-12,
            (a, b) => a == b,
        };
        let premise_ok = self.violation != Violation::Exceeds || eval.premise;
        premise_ok && close(eval.lhs, self.lhs) && close(eval.rhs, self.rhs) && self.is_violation(tol)
    }
}

fn exceeds(lhs: Extended, rhs: Extended, tol: f64) -> bool {
    match (lhs, rhs) {
        (Extended::Finite(l), Extended::Finite(r)) => l > r + tol,
        (Extended::Infinite, Extended::Finite(_)) => true,
        (_, Extended::Infinite) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub kind: ContractionKind,
    /// Largest ratio found over eligible pairs (0 when there are none).
    pub alpha_star: Extended,
    pub eligible_pairs: usize,
    /// The queried factor, or `None` for an "is it contractive at all" query.
    pub alpha: Option<f64>,
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Some pair sits at infinite distance; the table is not a genuine metric.
    #[serde(default)]
    pub extended_regime: bool,
}

/// A fully specified pairwise check, used to re-evaluate witnesses.
#[derive(Debug, Clone, Copy)]
pub enum Check<'a> {
    OrderedD,
    GlobalD,
    GlobalE(&'a ChainMetric),
    SuzukiF,
    WeakG(GPremise),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEvaluation {
    pub premise: bool,
    pub lhs: Extended,
    pub rhs: Extended,
}

/// Premise, `lhs = dist(Tx,Ty)` and `rhs = alpha * dist(x,y)` for one directed pair.
pub fn evaluate_pair(
    space: &OrderedMetricSpace,
    map: &SelfMap,
    check: Check<'_>,
    x: usize,
    y: usize,
    alpha: f64,
) -> PairEvaluation {
    let (tx, ty) = (map.apply(x), map.apply(y));
    let d = |a: usize, b: usize| Extended::Finite(space.d(a, b));
    let (premise, lhs, base) = match check {
        Check::OrderedD => (space.le(x, y), d(tx, ty), d(x, y)),
        Check::GlobalD => (true, d(tx, ty), d(x, y)),
        Check::GlobalE(e) => (true, e.get(tx, ty), e.get(x, y)),
        Check::SuzukiF => (suzuki::f_premise(space, map, x, y, alpha), d(tx, ty), d(x, y)),
        Check::WeakG(variant) => (suzuki::g_premise(space, map, x, y, alpha, variant), d(tx, ty), d(x, y)),
    };
    PairEvaluation { premise, lhs, rhs: base.scale(alpha) }
}

/// Accumulates the extremal ratio and the first violation over a pair scan.
struct PairScan {
    kind: ContractionKind,
    alpha: Option<f64>,
    tol: f64,
    eligible: usize,
    best: Option<(Extended, usize, usize)>,
    first_violation: Option<Witness>,
    first_unbounded: Option<(usize, usize)>,
}

impl PairScan {
    fn new(kind: ContractionKind, alpha: Option<f64>, tol: f64) -> Self {
        Self { kind, alpha, tol, eligible: 0, best: None, first_violation: None, first_unbounded: None }
    }

    /// Records an eligible pair with image distance `num` and distance `den`.
    fn record(&mut self, x: usize, y: usize, num: Extended, den: Extended) {
        if den == Extended::ZERO {
            return;
        }
        self.eligible += 1;
        let Extended::Finite(den_v) = den else {
            self.first_unbounded.get_or_insert((x, y));
            return;
        };
        let ratio = match num {
            Extended::Finite(v) => Extended::Finite(v / den_v),
            Extended::Infinite => Extended::Infinite,
        };
        if self.best.is_none_or(|(r, _, _)| ratio > r) {
            self.best = Some((ratio, x, y));
        }
        if let Some(a) = self.alpha {
            let rhs = den.scale(a);
            if self.first_violation.is_none() && exceeds(num, rhs, self.tol) {
                self.first_violation = Some(Witness {
                    x: PointId(x),
                    y: PointId(y),
                    alpha: a,
                    lhs: num,
                    rhs,
                    violation: Violation::Exceeds,
                });
            }
        }
    }

    fn finish(self, space_num: impl Fn(usize, usize) -> (Extended, Extended)) -> ContractionReport {
        let alpha_star = self.best.map_or(Extended::ZERO, |(r, _, _)| r);
        let extended_regime = self.first_unbounded.is_some();
        let (verdict, witness) = match self.alpha {
            Some(_) => {
                let unbounded = self.first_unbounded.map(|(x, y)| {
                    let (lhs, _) = space_num(x, y);
                    Witness {
                        x: PointId(x),
                        y: PointId(y),
                        alpha: self.alpha.unwrap(),
                        lhs,
                        rhs: Extended::Infinite,
                        violation: Violation::Unbounded,
                    }
                });
                let w = unbounded.or(self.first_violation);
                (w.is_none(), w)
            }
            None => {
                if let Some((x, y)) = self.first_unbounded {
                    let (lhs, _) = space_num(x, y);
                    let w = Witness {
                        x: PointId(x),
                        y: PointId(y),
                        alpha: 1.0,
                        lhs,
                        rhs: Extended::Infinite,
                        violation: Violation::Unbounded,
                    };
                    (false, Some(w))
                } else if alpha_star < Extended::Finite(1.0) {
                    (true, None)
                } else {
                    let (_, x, y) = self.best.expect("ratio >= 1 needs a pair");
                    let (lhs, rhs) = space_num(x, y);
                    let w = Witness {
                        x: PointId(x),
                        y: PointId(y),
                        alpha: 1.0,
                        lhs,
                        rhs,
                        violation: Violation::NotContracting,
                    };
                    (false, Some(w))
                }
            }
        };
        ContractionReport {
            kind: self.kind,
            alpha_star,
            eligible_pairs: self.eligible,
            alpha: self.alpha,
            verdict,
            witness,
            extended_regime,
        }
    }
}

fn ordered_scan(space: &OrderedMetricSpace, map: &SelfMap, alpha: Option<f64>, tol: f64) -> ContractionReport {
    let mut scan = PairScan::new(ContractionKind::OrderedD, alpha, tol);
    let n = space.size();
    for x in 0..n {
        for y in 0..n {
            if x != y && space.le(x, y) {
                let num = Extended::Finite(space.d(map.apply(x), map.apply(y)));
                scan.record(x, y, num, Extended::Finite(space.d(x, y)));
            }
        }
    }
    scan.finish(|x, y| (Extended::Finite(space.d(map.apply(x), map.apply(y))), Extended::Finite(space.d(x, y))))
}

/// Best factor `a` with `d(Tx,Ty) <= a d(x,y)` over all `x <= y`.
///
/// `verdict` is true iff the map is (d,<=)-contractive, i.e. the factor is
/// below one; otherwise the witness is the extremal pair.
pub fn ordered_contraction_factor(space: &OrderedMetricSpace, map: &SelfMap) -> ContractionReport {
    ordered_scan(space, map, None, 0.0)
}

/// Checks `d(Tx,Ty) <= alpha d(x,y) + tol` over all `x <= y`.
pub fn ordered_contraction_check(space: &OrderedMetricSpace, map: &SelfMap, alpha: f64, tol: f64) -> ContractionReport {
    ordered_scan(space, map, Some(alpha), tol)
}

fn global_scan<D: DistanceTable + ?Sized>(table: &D, map: &SelfMap, alpha: Option<f64>, tol: f64) -> ContractionReport {
    let mut scan = PairScan::new(ContractionKind::GlobalE, alpha, tol);
    let n = table.size();
    for x in 0..n {
        for y in (x + 1)..n {
            let num = table.distance(map.apply(x), map.apply(y));
            scan.record(x, y, num, table.distance(x, y));
        }
    }
    scan.finish(|x, y| (table.distance(map.apply(x), map.apply(y)), table.distance(x, y)))
}

/// Best factor `a` with `e(Tx,Ty) <= a e(x,y)` over all pairs.
///
/// Pairs at infinite distance impose no ratio constraint but put the report
/// in the extended-metric regime, where the verdict is always false.
pub fn global_contraction_factor<D: DistanceTable + ?Sized>(table: &D, map: &SelfMap) -> ContractionReport {
    global_scan(table, map, None, 0.0)
}

pub fn global_contraction_check<D: DistanceTable + ?Sized>(
    table: &D,
    map: &SelfMap,
    alpha: f64,
    tol: f64,
) -> ContractionReport {
    global_scan(table, map, Some(alpha), tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Neither,
    Both,
}

impl Monotonicity {
    pub fn is_monotone(self) -> bool {
        self != Monotonicity::Neither
    }

    pub fn is_increasing(self) -> bool {
        matches!(self, Monotonicity::Increasing | Monotonicity::Both)
    }
}

/// First pair `x <= y` with `Tx <= Ty` failing.
pub fn increasing_violation(space: &OrderedMetricSpace, map: &SelfMap) -> Option<(PointId, PointId)> {
    order_pairs(space).find(|&(x, y)| !space.le(map.apply(x), map.apply(y))).map(|(x, y)| (PointId(x), PointId(y)))
}

/// First pair `x <= y` with `Ty <= Tx` failing.
pub fn decreasing_violation(space: &OrderedMetricSpace, map: &SelfMap) -> Option<(PointId, PointId)> {
    order_pairs(space).find(|&(x, y)| !space.le(map.apply(y), map.apply(x))).map(|(x, y)| (PointId(x), PointId(y)))
}

fn order_pairs(space: &OrderedMetricSpace) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = space.size();
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| space.le(x, y))
}

pub fn is_monotone(space: &OrderedMetricSpace, map: &SelfMap) -> Monotonicity {
    match (increasing_violation(space, map).is_none(), decreasing_violation(space, map).is_none()) {
        (true, true) => Monotonicity::Both,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (false, false) => Monotonicity::Neither,
    }
}

/// First comparable pair whose images are incomparable.
pub fn comparability_violation(space: &OrderedMetricSpace, map: &SelfMap) -> Option<(PointId, PointId)> {
    let n = space.size();
    (0..n)
        .flat_map(|x| (x..n).map(move |y| (x, y)))
        .find(|&(x, y)| space.is_comparable(x, y) && !space.is_comparable(map.apply(x), map.apply(y)))
        .map(|(x, y)| (PointId(x), PointId(y)))
}

/// `x <> y` implies `Tx <> Ty`.
pub fn is_comparability_increasing(space: &OrderedMetricSpace, map: &SelfMap) -> bool {
    comparability_violation(space, map).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::chain_metric;
    use crate::space::{OrderRelation, DEFAULT_TOLERANCE};
    use crate::testutil::{line, space_with};

    const TOL: f64 = DEFAULT_TOLERANCE;

    /// X = {0, 1, 3} on a line, total order, T: 0->0, 1->0, 3->1.
    pub(crate) fn three_point() -> (OrderedMetricSpace, SelfMap) {
        let space = space_with(line(&[0.0, 1.0, 3.0]), &[(0, 1), (1, 2)]);
        (space, SelfMap::new(vec![0, 0, 1]).unwrap())
    }

    #[test]
    fn identity_is_not_contractive() {
        let (space, _) = three_point();
        let r = ordered_contraction_factor(&space, &SelfMap::identity(3));
        assert_eq!(r.alpha_star, Extended::Finite(1.0));
        assert!(!r.verdict);
        let w = r.witness.unwrap();
        assert_eq!(w.violation, Violation::NotContracting);
        assert!(w.reproduces(&space, &SelfMap::identity(3), Check::OrderedD, TOL));
    }

    #[test]
    fn constant_map_factor_is_zero() {
        let (space, _) = three_point();
        let r = ordered_contraction_factor(&space, &SelfMap::constant(3, 2));
        assert_eq!(r.alpha_star, Extended::ZERO);
        assert!(r.verdict);
    }

    #[test]
    fn three_point_factor_is_half() {
        let (space, map) = three_point();
        let r = ordered_contraction_factor(&space, &map);
        assert_eq!(r.alpha_star, Extended::Finite(0.5));
        assert_eq!(r.eligible_pairs, 3);
        assert!(r.verdict);
        assert!(ordered_contraction_check(&space, &map, 0.5, TOL).verdict);
        let tight = ordered_contraction_check(&space, &map, 0.4, TOL);
        assert!(!tight.verdict);
        let w = tight.witness.unwrap();
        assert_eq!((w.x, w.y), (PointId(1), PointId(2)));
        assert!(w.reproduces(&space, &map, Check::OrderedD, TOL));
    }

    #[test]
    fn global_factor_matches_on_total_order() {
        let (space, map) = three_point();
        let g = global_contraction_factor(space.metric(), &map);
        assert_eq!(g.alpha_star, Extended::Finite(0.5));
        let e = chain_metric(&space);
        assert_eq!(global_contraction_factor(&e, &map).alpha_star, Extended::Finite(0.5));
        assert_eq!(global_contraction_factor(&e, &SelfMap::identity(3)).alpha_star, Extended::Finite(1.0));
        assert_eq!(global_contraction_factor(&e, &SelfMap::constant(3, 0)).alpha_star, Extended::ZERO);
    }

    #[test]
    fn disconnected_chain_metric_is_extended_regime() {
        let space = space_with(line(&[0.0, 1.0, 2.0, 3.0]), &[(0, 1), (2, 3)]);
        let e = chain_metric(&space);
        let map = SelfMap::new(vec![0, 0, 3, 3]).unwrap();
        let r = global_contraction_factor(&e, &map);
        assert!(r.extended_regime);
        assert!(!r.verdict);
        assert_eq!(r.alpha_star, Extended::ZERO);
        let w = r.witness.unwrap();
        assert_eq!(w.violation, Violation::Unbounded);
        assert!(w.reproduces(&space, &map, Check::GlobalE(&e), TOL));
    }

    #[test]
    fn monotonicity_cases() {
        let (space, _) = three_point();
        assert_eq!(is_monotone(&space, &SelfMap::identity(3)), Monotonicity::Increasing);
        assert_eq!(is_monotone(&space, &SelfMap::constant(3, 1)), Monotonicity::Both);
        assert_eq!(is_monotone(&space, &SelfMap::new(vec![2, 1, 0]).unwrap()), Monotonicity::Decreasing);
        assert_eq!(is_monotone(&space, &SelfMap::new(vec![1, 0, 2]).unwrap()), Monotonicity::Neither);
        let discrete = OrderedMetricSpace::new(line(&[0.0, 1.0]), OrderRelation::discrete(2)).unwrap();
        assert_eq!(is_monotone(&discrete, &SelfMap::identity(2)), Monotonicity::Both);
    }

    #[test]
    fn comparability_increasing_cases() {
        // a <= b, c <= d; T: a->a, b->c, c->c, d->d
        let space = space_with(line(&[0.0, 1.0, 2.0, 3.0]), &[(0, 1), (2, 3)]);
        let map = SelfMap::new(vec![0, 2, 2, 3]).unwrap();
        assert!(!is_comparability_increasing(&space, &map));
        assert_eq!(comparability_violation(&space, &map), Some((PointId(0), PointId(1))));
        assert!(is_comparability_increasing(&space, &SelfMap::identity(4)));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::space::DEFAULT_TOLERANCE;
    use crate::testutil::arb_space_and_map;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn monotone_maps_preserve_comparability((space, map) in arb_space_and_map(6)) {
            if is_monotone(&space, &map).is_monotone() {
                prop_assert!(is_comparability_increasing(&space, &map));
            }
        }

        #[test]
        fn ordered_factor_bounded_by_global((space, map) in arb_space_and_map(6)) {
            let ordered = ordered_contraction_factor(&space, &map).alpha_star;
            let global = global_contraction_factor(space.metric(), &map).alpha_star;
            prop_assert!(ordered <= global);
            if space.order().is_total() {
                prop_assert_eq!(ordered, global);
            }
        }

        #[test]
        fn witnesses_reproduce((space, map) in arb_space_and_map(6), alpha in 0.05f64..0.95) {
            let tol = DEFAULT_TOLERANCE;
            for r in [ordered_contraction_factor(&space, &map), ordered_contraction_check(&space, &map, alpha, tol)] {
                prop_assert_eq!(r.verdict, r.witness.is_none());
                if let Some(w) = r.witness {
                    prop_assert!(w.reproduces(&space, &map, Check::OrderedD, tol));
                }
            }
            let r = global_contraction_check(space.metric(), &map, alpha, tol);
            if let Some(w) = r.witness {
                prop_assert!(w.reproduces(&space, &map, Check::GlobalD, tol));
            }
        }
    }
}
