//! Threshold functions F and G, and the conditional contraction checks built on them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ContractionKind, ContractionReport, PairScan};
use crate::extended::Extended;
use crate::space::{OrderedMetricSpace, SelfMap};

/// `(sqrt(5) - 1) / 2`, where F leaves its constant branch.
pub const GOLDEN_BREAK: f64 = 0.618_033_988_749_894_9;
/// `2^(-1/2)`, where F switches to `1 / (1 + t)`.
pub const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum DomainError {
    #[error("argument {t} must be nonnegative")]
    Negative { t: f64 },
    #[error("argument {t} must be positive")]
    NonPositive { t: f64 },
    #[error("alpha {alpha} outside {range}")]
    AlphaOutOfRange { alpha: f64, range: &'static str },
    #[error("grid step {step} must lie in (0, 0.5]")]
    InvalidGridStep { step: f64 },
}

/// F(t): 1 up to the golden break, `(1 - t)/t^2` up to `2^(-1/2)`, then `1/(1 + t)`.
pub fn suzuki_f(t: f64) -> Result<f64, DomainError> {
    if t.is_nan() || t < 0.0 {
        return Err(DomainError::Negative { t });
    }
    Ok(if t <= GOLDEN_BREAK {
        1.0
    } else if t <= SQRT_HALF {
        (1.0 - t) / (t * t)
    } else {
        1.0 / (1.0 + t)
    })
}

/// G(t) = 1 / (1 + t) on `t > 0`.
pub fn suzuki_g(t: f64) -> Result<f64, DomainError> {
    if t.is_nan() || t <= 0.0 {
        return Err(DomainError::NonPositive { t });
    }
    Ok(1.0 / (1.0 + t))
}

/// Which second argument the weak-G premise uses in its `max`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GPremise {
    /// `max{d(x,Tx), d(y,Tx)}`, the form used throughout the theory.
    #[default]
    AsWritten,
    /// `max{d(x,Tx), d(y,Ty)}`, evaluated only for comparison.
    DualImage,
}

// Witness replay has no tolerance argument, so premises use the default slack.
const PREMISE_TOL: f64 = crate::space::DEFAULT_TOLERANCE;

pub(super) fn f_premise(space: &OrderedMetricSpace, map: &SelfMap, x: usize, y: usize, alpha: f64) -> bool {
    let f = suzuki_f(alpha).expect("alpha validated");
    f * space.d(x, map.apply(x)) <= space.d(x, y) + PREMISE_TOL
}

pub(super) fn g_premise(
    space: &OrderedMetricSpace,
    map: &SelfMap,
    x: usize,
    y: usize,
    alpha: f64,
    variant: GPremise,
) -> bool {
    if !space.is_comparable(x, y) {
        return false;
    }
    let g = suzuki_g(alpha).expect("alpha validated");
    let tx = map.apply(x);
    let second = match variant {
        GPremise::AsWritten => space.d(y, tx),
        GPremise::DualImage => space.d(y, map.apply(y)),
    };
    g * space.d(x, tx).max(second) <= space.d(x, y) + PREMISE_TOL
}

/// Conditional F-contraction at `alpha` in `[0, 1)`: over every directed pair,
/// `F(alpha) d(x,Tx) <= d(x,y)` implies `d(Tx,Ty) <= alpha d(x,y)`.
pub fn check_conditional_f_contractive(
    space: &OrderedMetricSpace,
    map: &SelfMap,
    alpha: f64,
    tol: f64,
) -> Result<ContractionReport, DomainError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(DomainError::AlphaOutOfRange { alpha, range: "[0, 1)" });
    }
    let f = suzuki_f(alpha)?;
    let n = space.size();
    let mut scan = PairScan::new(ContractionKind::SuzukiF, Some(alpha), tol);
    for x in 0..n {
        for y in 0..n {
            if x == y || f * space.d(x, map.apply(x)) > space.d(x, y) + tol {
                continue;
            }
            scan.record(x, y, image_distance(space, map, x, y), Extended::Finite(space.d(x, y)));
        }
    }
    Ok(scan.finish(|x, y| (image_distance(space, map, x, y), Extended::Finite(space.d(x, y)))))
}

/// Weakly conditional (G, <>)-contraction at `alpha` in `(0, 1)`: over every
/// directed comparable pair, `G(alpha) max{d(x,Tx), d(y,Tx)} <= d(x,y)`
/// implies `d(Tx,Ty) <= alpha d(x,y)`.
pub fn check_weak_conditional_g_contractive(
    space: &OrderedMetricSpace,
    map: &SelfMap,
    alpha: f64,
    premise: GPremise,
    tol: f64,
) -> Result<ContractionReport, DomainError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(DomainError::AlphaOutOfRange { alpha, range: "(0, 1)" });
    }
    let g = suzuki_g(alpha)?;
    let n = space.size();
    let mut scan = PairScan::new(ContractionKind::WeakG, Some(alpha), tol);
    for x in 0..n {
        let tx = map.apply(x);
        for y in 0..n {
            if x == y || !space.is_comparable(x, y) {
                continue;
            }
            let second = match premise {
                GPremise::AsWritten => space.d(y, tx),
                GPremise::DualImage => space.d(y, map.apply(y)),
            };
            if g * space.d(x, tx).max(second) > space.d(x, y) + tol {
                continue;
            }
            scan.record(x, y, image_distance(space, map, x, y), Extended::Finite(space.d(x, y)));
        }
    }
    Ok(scan.finish(|x, y| (image_distance(space, map, x, y), Extended::Finite(space.d(x, y)))))
}

fn image_distance(space: &OrderedMetricSpace, map: &SelfMap, x: usize, y: usize) -> Extended {
    Extended::Finite(space.d(map.apply(x), map.apply(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::Check;
    use crate::space::{OrderRelation, PointId, DEFAULT_TOLERANCE};
    use crate::testutil::{line, space_with};

    const TOL: f64 = DEFAULT_TOLERANCE;

    #[test]
    fn breakpoint_constants() {
        assert_eq!(GOLDEN_BREAK, (5f64.sqrt() - 1.0) / 2.0);
        assert_eq!(SQRT_HALF, 0.5f64.sqrt());
    }

    #[test]
    fn f_values() {
        assert_eq!(suzuki_f(0.0).unwrap(), 1.0);
        assert_eq!(suzuki_f(GOLDEN_BREAK).unwrap(), 1.0);
        let t = GOLDEN_BREAK;
        assert!(((1.0 - t) / (t * t) - 1.0).abs() < 1e-12);
        let expected = 2.0 - 2f64.sqrt();
        assert!((suzuki_f(SQRT_HALF).unwrap() - expected).abs() < 1e-12);
        assert!((1.0 / (1.0 + SQRT_HALF) - expected).abs() < 1e-12);
        assert!(suzuki_f(-0.1).is_err());
    }

    #[test]
    fn g_values() {
        assert_eq!(suzuki_g(1.0).unwrap(), 0.5);
        assert_eq!(suzuki_g(3.0).unwrap(), 0.25);
        assert!(suzuki_g(1e-12).unwrap() > 1.0 - 1e-11);
        assert!(suzuki_g(0.0).is_err());
        assert!(suzuki_g(-1.0).is_err());
    }

    #[test]
    fn f_is_nonincreasing_and_continuous() {
        let mut prev = suzuki_f(0.0).unwrap();
        for k in 1..=10_000 {
            let v = suzuki_f(4.0 * k as f64 / 10_000.0).unwrap();
            assert!(v <= prev + 1e-12);
            prev = v;
        }
        for b in [GOLDEN_BREAK, SQRT_HALF] {
            let h = 1e-12;
            assert!((suzuki_f(b + h).unwrap() - suzuki_f(b - h).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn f_check_on_constant_and_identity() {
        let space = space_with(line(&[0.0, 2.0]), &[(0, 1)]);
        let r = check_conditional_f_contractive(&space, &SelfMap::constant(2, 1), 0.3, TOL).unwrap();
        assert!(r.verdict);
        let id = SelfMap::identity(2);
        let r = check_conditional_f_contractive(&space, &id, 0.3, TOL).unwrap();
        assert!(!r.verdict);
        let w = r.witness.unwrap();
        assert_eq!((w.x, w.y), (PointId(0), PointId(1)));
        assert!(w.reproduces(&space, &id, Check::SuzukiF, TOL));
        assert!(check_conditional_f_contractive(&space, &id, 1.0, TOL).is_err());
    }

    #[test]
    fn f_check_three_point_instance() {
        let space = space_with(line(&[0.0, 1.0, 3.0]), &[(0, 1), (1, 2)]);
        let map = SelfMap::new(vec![0, 0, 1]).unwrap();
        let r = check_conditional_f_contractive(&space, &map, 0.5, TOL).unwrap();
        assert!(r.verdict);
        assert_eq!(r.eligible_pairs, 6);
    }

    #[test]
    fn g_check_comparable_fixed_points_fail() {
        let space = space_with(line(&[0.0, 1.5]), &[(0, 1)]);
        let id = SelfMap::identity(2);
        for k in 1..10 {
            let alpha = k as f64 / 10.0;
            let r = check_weak_conditional_g_contractive(&space, &id, alpha, GPremise::AsWritten, TOL).unwrap();
            assert!(!r.verdict);
            assert!(r.witness.unwrap().reproduces(&space, &id, Check::WeakG(GPremise::AsWritten), TOL));
        }
    }

    #[test]
    fn g_check_vacuous_and_constant() {
        let discrete = OrderedMetricSpace::new(line(&[0.0, 1.0, 2.0]), OrderRelation::discrete(3)).unwrap();
        let swap = SelfMap::new(vec![1, 0, 2]).unwrap();
        let r = check_weak_conditional_g_contractive(&discrete, &swap, 0.5, GPremise::AsWritten, TOL).unwrap();
        assert!(r.verdict);
        assert_eq!(r.eligible_pairs, 0);
        let space = space_with(line(&[0.0, 1.0, 2.0]), &[(0, 1), (1, 2)]);
        let r = check_weak_conditional_g_contractive(&space, &SelfMap::constant(3, 1), 0.2, GPremise::AsWritten, TOL)
            .unwrap();
        assert!(r.verdict);
        assert!(check_weak_conditional_g_contractive(&space, &swap, 0.0, GPremise::AsWritten, TOL).is_err());
    }

    #[test]
    fn g_premise_variants_can_differ() {
        // x = 0, y = 1, T = [0, 2, 2]: d(y,Tx) = 1 but d(y,Ty) = 9.
        let space = space_with(line(&[0.0, 1.0, 10.0]), &[(0, 1), (1, 2)]);
        let map = SelfMap::new(vec![0, 2, 2]).unwrap();
        assert!(g_premise(&space, &map, 0, 1, 0.5, GPremise::AsWritten));
        assert!(!g_premise(&space, &map, 0, 1, 0.5, GPremise::DualImage));
    }
}
