//! Grid search for a contraction factor.

use super::suzuki::{check_conditional_f_contractive, check_weak_conditional_g_contractive, DomainError, GPremise};
use super::{comparison_profile, global_contraction_check, ordered_contraction_check, profile_bound_violation};
use super::ContractionKind;
use crate::chain::chain_metric;
use crate::space::{OrderedMetricSpace, SelfMap};

pub const DEFAULT_GRID_STEP: f64 = 1e-3;

/// Smallest `alpha` on `{h, 2h, ..., 1 - h}` passing the `kind` check, then
/// one bisection step towards the last failing grid point.
///
/// Feasibility need not be monotone in `alpha` for the conditional checks,
/// so this is the first passing grid point, not a global minimum.
pub fn minimal_alpha(
    space: &OrderedMetricSpace,
    map: &SelfMap,
    kind: ContractionKind,
    grid_step: f64,
    tol: f64,
) -> Result<Option<f64>, DomainError> {
    if !(grid_step > 0.0 && grid_step <= 0.5) {
        return Err(DomainError::InvalidGridStep { step: grid_step });
    }
    let chain = (kind == ContractionKind::GlobalE).then(|| chain_metric(space));
    let profile = (kind == ContractionKind::ComparisonProfile).then(|| comparison_profile(space, map));
    let passes = |alpha: f64| -> Result<bool, DomainError> {
        Ok(match kind {
            ContractionKind::OrderedD => ordered_contraction_check(space, map, alpha, tol).verdict,
            ContractionKind::GlobalE => global_contraction_check(chain.as_ref().unwrap(), map, alpha, tol).verdict,
            ContractionKind::SuzukiF => check_conditional_f_contractive(space, map, alpha, tol)?.verdict,
            ContractionKind::WeakG => {
                check_weak_conditional_g_contractive(space, map, alpha, GPremise::AsWritten, tol)?.verdict
            }
            ContractionKind::ComparisonProfile => {
                profile_bound_violation(profile.as_ref().unwrap(), alpha, tol).is_none()
            }
        })
    };

    let points = ((1.0 - grid_step) / grid_step + 1e-9).floor() as usize;
    for k in 1..=points {
        let alpha = k as f64 * grid_step;
        if passes(alpha)? {
            if k > 1 {
                let mid = alpha - 0.5 * grid_step;
                if passes(mid)? {
                    return Ok(Some(mid));
                }
            }
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}
