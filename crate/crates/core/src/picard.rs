//! Orbits and Picard-operator classification, plain and ordered.
//!
//! On a finite space a sequence converges iff it is eventually constant, so
//! every orbit ends in either a fixed point or a cycle of length at least two.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::space::{OrderedMetricSpace, PointId, SelfMap, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "points", rename_all = "snake_case")]
pub enum Limit {
    Fixed(PointId),
    Cycle(Vec<PointId>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardResult {
    pub start: PointId,
    /// Iterates up to, not including, the first repeated point.
    pub orbit: Vec<PointId>,
    pub limit: Limit,
    pub reached_fixed_point: bool,
    /// Index of the first orbit term that lies in the limit set.
    pub steps_to_limit: usize,
    /// `T^n x <= T^(n+1) x` for all `n`.
    pub ascending: bool,
    /// `T^n x <= z` for all `n >= 0`, where `z` is the fixed limit.
    pub limit_dominates: bool,
}

impl PicardResult {
    pub fn fixed_limit(&self) -> Option<PointId> {
        match self.limit {
            Limit::Fixed(z) => Some(z),
            Limit::Cycle(_) => None,
        }
    }
}

fn orbit_unchecked(space: &OrderedMetricSpace, map: &SelfMap, start: usize) -> PicardResult {
    let n = space.size();
    let mut seen = vec![usize::MAX; n];
    let mut orbit = Vec::new();
    let mut x = start;
    while seen[x] == usize::MAX {
        seen[x] = orbit.len();
        orbit.push(x);
        x = map.apply(x);
    }
    let entry = seen[x];
    let last = *orbit.last().unwrap();
    let ascending =
        orbit.windows(2).all(|w| space.le(w[0], w[1])) && space.le(last, map.apply(last));
    let (limit, limit_dominates) = if orbit.len() - entry == 1 {
        let z = orbit[entry];
        (Limit::Fixed(PointId(z)), orbit.iter().all(|&t| space.le(t, z)))
    } else {
        (Limit::Cycle(orbit[entry..].iter().map(|&i| PointId(i)).collect()), false)
    };
    PicardResult {
        start: PointId(start),
        orbit: orbit.into_iter().map(PointId).collect(),
        reached_fixed_point: matches!(limit, Limit::Fixed(_)),
        limit,
        steps_to_limit: entry,
        ascending,
        limit_dominates,
    }
}

pub fn picard_orbit(space: &OrderedMetricSpace, map: &SelfMap, start: PointId) -> Result<PicardResult, SpaceError> {
    map.check_against(space)?;
    if start.0 >= space.size() {
        return Err(SpaceError::PointOutOfRange { index: start.0, size: space.size() });
    }
    Ok(orbit_unchecked(space, map, start.0))
}

/// Orbits from every point, in index order.
pub fn all_orbits(space: &OrderedMetricSpace, map: &SelfMap) -> Result<Vec<PicardResult>, SpaceError> {
    map.check_against(space)?;
    Ok((0..space.size()).into_par_iter().map(|x| orbit_unchecked(space, map, x)).collect())
}

pub fn fixed_points(map: &SelfMap) -> Vec<PointId> {
    (0..map.size()).filter(|&x| map.apply(x) == x).map(PointId).collect()
}

/// Why a classification fails; every entry names concrete points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ClassificationWitness {
    NoFixedPoint,
    DistinctFixedPoints { first: PointId, second: PointId },
    ComparableFixedPoints { first: PointId, second: PointId },
    OrbitCycles { start: PointId, cycle: Vec<PointId> },
    LimitNotDominating { start: PointId, term: PointId, limit: PointId },
    NotMaximal { fixed: PointId, above: PointId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorClassification {
    pub fixed_points: Vec<PointId>,
    /// `{x : x <= Tx}`.
    pub ascending_starts: Vec<PointId>,
    /// `{x : x <> Tx}`.
    pub comparable_starts: Vec<PointId>,
    pub picard_plain: bool,
    pub picard_ordered: bool,
    /// Comparable fixed points coincide.
    pub leq_singleton: bool,
    /// Every fixed point is maximal among ascending starts above it.
    pub maximality_ok: bool,
    pub witnesses: Vec<ClassificationWitness>,
}

/// Plain sense: every orbit reaches a fixed point and there is exactly one.
pub fn classify_plain(space: &OrderedMetricSpace, map: &SelfMap) -> Result<OperatorClassification, SpaceError> {
    let mut c = classify(space, map)?;
    c.witnesses.retain(|w| {
        matches!(
            w,
            ClassificationWitness::NoFixedPoint
                | ClassificationWitness::DistinctFixedPoints { .. }
                | ClassificationWitness::OrbitCycles { .. }
        )
    });
    Ok(c)
}

/// Ordered sense: every ascending start converges to a fixed point that
/// dominates its whole orbit, and comparable fixed points coincide.
pub fn classify_ordered(space: &OrderedMetricSpace, map: &SelfMap) -> Result<OperatorClassification, SpaceError> {
    let mut c = classify(space, map)?;
    c.witnesses.retain(|w| {
        !matches!(w, ClassificationWitness::NoFixedPoint | ClassificationWitness::DistinctFixedPoints { .. })
    });
    Ok(c)
}

/// Both senses at once, with every witness found.
pub fn classify(space: &OrderedMetricSpace, map: &SelfMap) -> Result<OperatorClassification, SpaceError> {
    let orbits = all_orbits(space, map)?;
    let n = space.size();
    let fixed = fixed_points(map);
    let ascending_starts: Vec<usize> = (0..n).filter(|&x| space.le(x, map.apply(x))).collect();
    let comparable_starts: Vec<PointId> =
        (0..n).filter(|&x| space.is_comparable(x, map.apply(x))).map(PointId).collect();

    let mut witnesses = Vec::new();
    match fixed.as_slice() {
        [] => witnesses.push(ClassificationWitness::NoFixedPoint),
        [_] => {}
        [a, b, ..] => witnesses.push(ClassificationWitness::DistinctFixedPoints { first: *a, second: *b }),
    }
    let first_cycle = orbits.iter().find(|o| !o.reached_fixed_point);
    if let Some(o) = first_cycle {
        if let Limit::Cycle(cycle) = &o.limit {
            witnesses.push(ClassificationWitness::OrbitCycles { start: o.start, cycle: cycle.clone() });
        }
    }
    let picard_plain = fixed.len() == 1 && first_cycle.is_none();

    let comparable_fixed = fixed
        .iter()
        .enumerate()
        .flat_map(|(i, a)| fixed[i + 1..].iter().map(move |b| (*a, *b)))
        .find(|(a, b)| space.is_comparable(a.0, b.0));
    if let Some((first, second)) = comparable_fixed {
        witnesses.push(ClassificationWitness::ComparableFixedPoints { first, second });
    }
    let leq_singleton = comparable_fixed.is_none();

    let mut starts_ok = true;
    for &x in &ascending_starts {
        let o = &orbits[x];
        match &o.limit {
            Limit::Cycle(cycle) => {
                if starts_ok && first_cycle.is_none_or(|c| c.start != o.start) {
                    witnesses.push(ClassificationWitness::OrbitCycles { start: o.start, cycle: cycle.clone() });
                }
                starts_ok = false;
            }
            Limit::Fixed(z) => {
                if let Some(&term) = o.orbit.iter().find(|t| !space.le(t.0, z.0)) {
                    if starts_ok {
                        witnesses.push(ClassificationWitness::LimitNotDominating { start: o.start, term, limit: *z });
                    }
                    starts_ok = false;
                }
            }
        }
    }

    let not_maximal = fixed.iter().find_map(|&z| {
        ascending_starts
            .iter()
            .find(|&&u| space.le(z.0, u) && !space.le(u, z.0))
            .map(|&u| ClassificationWitness::NotMaximal { fixed: z, above: PointId(u) })
    });
    let maximality_ok = not_maximal.is_none();
    witnesses.extend(not_maximal);

    Ok(OperatorClassification {
        fixed_points: fixed,
        ascending_starts: ascending_starts.into_iter().map(PointId).collect(),
        comparable_starts,
        picard_plain,
        picard_ordered: starts_ok && leq_singleton && maximality_ok,
        leq_singleton,
        maximality_ok,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfClosedReport {
    pub verdict: bool,
    /// Starts whose orbit is ascending and eventually constant.
    pub ascending_orbits: usize,
    pub witness: Option<ClassificationWitness>,
}

/// Every ascending orbit that settles at `z` has all of its terms `<= z`.
pub fn check_ao_self_closed(space: &OrderedMetricSpace, map: &SelfMap) -> Result<SelfClosedReport, SpaceError> {
    let mut count = 0;
    let mut witness = None;
    for o in all_orbits(space, map)? {
        let (true, Some(z)) = (o.ascending, o.fixed_limit()) else { continue };
        count += 1;
        if witness.is_none() && !o.limit_dominates {
            let term = *o.orbit.iter().find(|t| !space.le(t.0, z.0)).expect("some term escapes");
            witness = Some(ClassificationWitness::LimitNotDominating { start: o.start, term, limit: z });
        }
    }
    Ok(SelfClosedReport { verdict: witness.is_none(), ascending_orbits: count, witness })
}

/// Convergent sequences in a finite space are eventually constant, and the
/// constant tail is a comparable subsequence, so this always holds.
pub fn check_a06(_space: &OrderedMetricSpace) -> bool {
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{close_order, OrderKind, OrderRelation};
    use crate::testutil::{line, space_with};

    fn three_point() -> (OrderedMetricSpace, SelfMap) {
        let space = space_with(line(&[0.0, 1.0, 3.0]), &[(0, 1), (1, 2)]);
        (space, SelfMap::new(vec![0, 0, 1]).unwrap())
    }

    fn ids(v: &[usize]) -> Vec<PointId> {
        v.iter().copied().map(PointId).collect()
    }

    #[test]
    fn orbit_of_three_point_map() {
        let (space, map) = three_point();
        let r = picard_orbit(&space, &map, PointId(2)).unwrap();
        assert_eq!(r.orbit, ids(&[2, 1, 0]));
        assert_eq!(r.limit, Limit::Fixed(PointId(0)));
        assert_eq!(r.steps_to_limit, 2);
        assert!(r.reached_fixed_point);
        assert!(!r.ascending);
        assert!(!r.limit_dominates);
        assert_eq!(picard_orbit(&space, &map, PointId(2)).unwrap(), r);
        assert!(picard_orbit(&space, &map, PointId(3)).is_err());
    }

    #[test]
    fn constant_and_swap_orbits() {
        let (space, _) = three_point();
        let c = SelfMap::constant(3, 1);
        for x in 0..3 {
            let r = picard_orbit(&space, &c, PointId(x)).unwrap();
            assert!(r.reached_fixed_point);
            assert!(r.steps_to_limit <= 1);
            assert_eq!(r.fixed_limit(), Some(PointId(1)));
        }
        let two = space_with(line(&[0.0, 1.0]), &[(0, 1)]);
        let swap = SelfMap::new(vec![1, 0]).unwrap();
        let r = picard_orbit(&two, &swap, PointId(0)).unwrap();
        assert_eq!(r.limit, Limit::Cycle(ids(&[0, 1])));
        assert_eq!(r.steps_to_limit, 0);
        assert!(!r.reached_fixed_point);
    }

    #[test]
    fn fixed_point_sets() {
        assert_eq!(fixed_points(&SelfMap::identity(3)), ids(&[0, 1, 2]));
        assert_eq!(fixed_points(&SelfMap::constant(3, 2)), ids(&[2]));
        assert!(fixed_points(&SelfMap::new(vec![1, 0]).unwrap()).is_empty());
    }

    #[test]
    fn plain_classification() {
        let (space, map) = three_point();
        let c = classify_plain(&space, &map).unwrap();
        assert!(c.picard_plain);
        assert_eq!(c.fixed_points, ids(&[0]));
        assert!(classify_plain(&space, &SelfMap::constant(3, 2)).unwrap().picard_plain);
        let id = classify_plain(&space, &SelfMap::identity(3)).unwrap();
        assert!(!id.picard_plain);
        assert_eq!(
            id.witnesses,
            vec![ClassificationWitness::DistinctFixedPoints { first: PointId(0), second: PointId(1) }]
        );
    }

    #[test]
    fn ordered_classification() {
        let antichain = OrderedMetricSpace::new(line(&[0.0, 1.0, 2.0]), OrderRelation::discrete(3)).unwrap();
        let c = classify_ordered(&antichain, &SelfMap::identity(3)).unwrap();
        assert!(c.leq_singleton && c.picard_ordered);
        assert_eq!(c.ascending_starts.len(), 3);

        let chain = space_with(line(&[0.0, 1.0]), &[(0, 1)]);
        let c = classify_ordered(&chain, &SelfMap::identity(2)).unwrap();
        assert!(!c.leq_singleton && !c.picard_ordered);

        // Reversed order 3 <= 1 <= 0 on the three-point instance.
        let reversed = space_with(line(&[0.0, 1.0, 3.0]), &[(2, 1), (1, 0)]);
        let map = SelfMap::new(vec![0, 0, 1]).unwrap();
        let c = classify_ordered(&reversed, &map).unwrap();
        assert_eq!(c.ascending_starts, ids(&[0, 1, 2]));
        assert!(c.picard_ordered && c.maximality_ok);
        assert_eq!(c.fixed_points, ids(&[0]));
    }

    #[test]
    fn ordered_failures_have_witnesses() {
        // 0 <= 1, T = [1, 1]: start 0 ascends to 1, fixed point 1 is maximal.
        let chain = space_with(line(&[0.0, 1.0]), &[(0, 1)]);
        assert!(classify_ordered(&chain, &SelfMap::constant(2, 1)).unwrap().picard_ordered);
        // T = [0, 0]: start 0 is fixed, start 1 is not ascending; 0 <= 1 but 1 is not in X(T,<=).
        let c = classify_ordered(&chain, &SelfMap::constant(2, 0)).unwrap();
        assert!(c.picard_ordered);
        // Swap: start 0 ascends into a cycle.
        let c = classify_ordered(&chain, &SelfMap::new(vec![1, 0]).unwrap()).unwrap();
        assert!(!c.picard_ordered);
        assert!(matches!(c.witnesses[0], ClassificationWitness::OrbitCycles { .. }));
    }

    #[test]
    fn maximality_failure() {
        // Order 0 <= 1 <= 2, 3 incomparable. T = [0, 2, 3, 3].
        // 0 is fixed, 1 <= T1 = 2 is an ascending start above 0 but 1 is not <= 0.
        let space = space_with(line(&[0.0, 1.0, 2.0, 3.0]), &[(0, 1), (1, 2)]);
        let map = SelfMap::new(vec![0, 2, 3, 3]).unwrap();
        let c = classify(&space, &map).unwrap();
        assert!(!c.maximality_ok);
        assert!(!c.picard_ordered);
        assert!(c.witnesses.contains(&ClassificationWitness::NotMaximal { fixed: PointId(0), above: PointId(1) }));
    }

    #[test]
    fn ao_self_closed_cases() {
        let order = close_order(&[(0, 1), (1, 0)], 2, OrderKind::Quasi).unwrap();
        let quasi = OrderedMetricSpace::new(line(&[0.0, 1.0]), order).unwrap();
        let r = check_ao_self_closed(&quasi, &SelfMap::constant(2, 1)).unwrap();
        assert!(r.verdict);
        assert_eq!(r.ascending_orbits, 2);

        let antichain = OrderedMetricSpace::new(line(&[0.0, 1.0]), OrderRelation::discrete(2)).unwrap();
        let r = check_ao_self_closed(&antichain, &SelfMap::new(vec![1, 0]).unwrap()).unwrap();
        assert!(r.verdict);
        assert_eq!(r.ascending_orbits, 0);
        assert!(check_a06(&antichain));
    }
}
