//! Exact sums of nonnegative `f64` values.
//!
//! Every finite `f64` is an integer multiple of a power of two, so a set of
//! weights can be placed on a common binary grid and added as big integers.
//! Rounding happens once, when a sum is converted back to `f64`; the result
//! is independent of summation order.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// A binary grid `2^exp` on which a set of weights are exact integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Grid {
    exp: i32,
}

/// `(mantissa, exponent)` with `v = mantissa * 2^exponent` and odd mantissa.
fn decompose(v: f64) -> Option<(u64, i32)> {
    debug_assert!(v.is_finite() && v >= 0.0);
    if v == 0.0 {
        return None;
    }
    let bits = v.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
    let tz = mant.trailing_zeros();
    Some((mant >> tz, exp + tz as i32))
}

impl Grid {
    /// The coarsest grid on which every weight is an integer.
    pub fn for_weights<I: IntoIterator<Item = f64>>(weights: I) -> Grid {
        let exp = weights.into_iter().filter_map(decompose).map(|(_, e)| e).min().unwrap_or(0);
        Grid { exp }
    }

    pub fn to_exact(self, v: f64) -> BigUint {
        match decompose(v) {
            None => BigUint::zero(),
            Some((mant, e)) => {
                assert!(e >= self.exp, "weight {v} is finer than the grid");
                BigUint::from(mant) << (e - self.exp) as usize
            }
        }
    }

    /// Round `k * 2^exp` to the nearest `f64`, ties to even.
    pub fn to_f64(self, k: &BigUint) -> f64 {
        let bits = k.bits();
        if bits <= 53 {
            return ldexp(k.to_u64().expect("fits in 53 bits") as f64, self.exp);
        }
        let shift = bits - 53;
        let mut top = (k >> shift).to_u64().expect("53 bits");
        let rem = k - (BigUint::from(top) << shift);
        let half = BigUint::from(1u8) << (shift - 1);
        if rem > half || (rem == half && top & 1 == 1) {
            top += 1;
        }
        ldexp(top as f64, self.exp + shift as i32)
    }
}

/// `x * 2^e`, exact whenever the result is a normal float.
fn ldexp(mut x: f64, mut e: i32) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e)
}
