//! Comparison profile `f(t) = max{ d(Tx,Ty) : x <= y, d(x,y) <= t }` and property (P).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::{OrderedMetricSpace, PointId, SelfMap};

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum ProfileError {
    #[error("step function needs at least one breakpoint")]
    Empty,
    #[error("{breakpoints} breakpoints but {values} values")]
    LengthMismatch { breakpoints: usize, values: usize },
    #[error("breakpoints must be finite, nonnegative and strictly increasing (index {index})")]
    BadBreakpoint { index: usize },
    #[error("value at index {index} is not finite and nonnegative")]
    BadValue { index: usize },
    #[error("profile decreases at breakpoint index {index}")]
    NonMonotoneProfile { index: usize },
    #[error("sample {t} must be finite and positive")]
    BadSample { t: f64 },
}

/// A right-continuous step function on `[0, inf)`: `values[k]` holds on
/// `[breakpoints[k], breakpoints[k+1])`, and `0` before the first breakpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    /// A pair attaining each value, when built from a map.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    attained_by: Vec<(PointId, PointId)>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self, ProfileError> {
        if breakpoints.is_empty() {
            return Err(ProfileError::Empty);
        }
        if breakpoints.len() != values.len() {
            return Err(ProfileError::LengthMismatch { breakpoints: breakpoints.len(), values: values.len() });
        }
        for (index, &b) in breakpoints.iter().enumerate() {
            let ok = b.is_finite() && b >= 0.0 && (index == 0 || b > breakpoints[index - 1]);
            if !ok {
                return Err(ProfileError::BadBreakpoint { index });
            }
        }
        if let Some(index) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(ProfileError::BadValue { index });
        }
        Ok(Self { breakpoints, values, attained_by: Vec::new() })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn attained_by(&self) -> &[(PointId, PointId)] {
        &self.attained_by
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.breakpoints.partition_point(|&b| b <= t) {
            0 => 0.0,
            k => self.values[k - 1],
        }
    }

    /// First breakpoint index where the function decreases.
    pub fn first_decrease(&self) -> Option<usize> {
        (1..self.values.len()).find(|&k| self.values[k] < self.values[k - 1])
    }

    pub fn is_monotone(&self) -> bool {
        self.first_decrease().is_none()
    }
}

/// The exact profile over ordered pairs, including `x = x` at `t = 0`.
pub fn comparison_profile(space: &OrderedMetricSpace, map: &SelfMap) -> StepFunction {
    let n = space.size();
    let mut pairs: Vec<(f64, f64, usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if space.le(x, y) {
                pairs.push((space.d(x, y), space.d(map.apply(x), map.apply(y)), x, y));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)).then(a.3.cmp(&b.3)));

    let mut breakpoints: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut attained_by = Vec::new();
    let mut best = (f64::NEG_INFINITY, PointId(0), PointId(0));
    for (t, image, x, y) in pairs {
        if image > best.0 {
            best = (image, PointId(x), PointId(y));
        }
        if breakpoints.last() == Some(&t) {
            *values.last_mut().unwrap() = best.0;
            *attained_by.last_mut().unwrap() = (best.1, best.2);
        } else {
            breakpoints.push(t);
            values.push(best.0);
            attained_by.push((best.1, best.2));
        }
    }
    StepFunction { breakpoints, values, attained_by }
}

/// First breakpoint `t` with `f(t) > alpha t + tol`, as `(t, f(t))`.
pub fn profile_bound_violation(f: &StepFunction, alpha: f64, tol: f64) -> Option<(f64, f64)> {
    f.breakpoints.iter().zip(&f.values).find(|&(&t, &v)| v > alpha * t + tol).map(|(&t, &v)| (t, v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTrace {
    pub sample: f64,
    /// Applications of `f` until the value drops below `tol`, if it did.
    pub iterations: Option<usize>,
    pub final_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyPReport {
    pub verdict: bool,
    pub samples: Vec<SampleTrace>,
    /// Samples with `f(t) >= t` despite a passing verdict. Always empty for a
    /// consistent implementation; non-empty means an internal error.
    pub consistency_violations: Vec<f64>,
}

/// Iterates `t <- f(t)` from each sample, up to `max_iters` times.
pub fn check_property_p(
    f: &StepFunction,
    samples: &[f64],
    max_iters: usize,
    tol: f64,
) -> Result<PropertyPReport, ProfileError> {
    if let Some(index) = f.first_decrease() {
        return Err(ProfileError::NonMonotoneProfile { index });
    }
    if let Some(&t) = samples.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(ProfileError::BadSample { t });
    }
    let traces: Vec<SampleTrace> = samples
        .iter()
        .map(|&sample| {
            let mut t = sample;
            let mut k = 0;
            while t >= tol && k < max_iters {
                t = f.eval(t);
                k += 1;
            }
            SampleTrace { sample, iterations: (t < tol).then_some(k), final_value: t }
        })
        .collect();
    let verdict = traces.iter().all(|s| s.iterations.is_some());
    let consistency_violations =
        if verdict { samples.iter().copied().filter(|&t| f.eval(t) >= t).collect() } else { Vec::new() };
    Ok(PropertyPReport { verdict, samples: traces, consistency_violations })
}
