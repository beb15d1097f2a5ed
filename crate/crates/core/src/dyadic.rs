//! Exact conversions between `f64` and dyadic rationals `m / 2^e`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

/// Splits a finite, non-negative `t` into `(m, e)` with `t = m / 2^e` exactly
/// and `m` odd (or zero).
pub(crate) fn split_unit(t: f64) -> (BigUint, u64) {
    debug_assert!(t.is_finite() && t >= 0.0);
    if t == 0.0 {
        return (BigUint::zero(), 0);
    }
    let bits = t.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut e) = if biased == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    let tz = m.trailing_zeros();
    m >>= tz;
    e += tz as i64;
    if e >= 0 {
        // only reachable for t >= 1
        (BigUint::from(m) << (e as u64), 0)
    } else {
        (BigUint::from(m), (-e) as u64)
    }
}

/// Correctly rounded `num / 2^shift`.
pub(crate) fn ratio_pow2_to_f64(num: &BigInt, shift: u64) -> f64 {
    let (sign, mag) = (num.sign(), num.magnitude());
    if sign == Sign::NoSign {
        return 0.0;
    }
    let bits = mag.bits();
    let (mantissa, exp) = if bits <= 64 {
        (mag.to_u64().unwrap_or(0), -(shift as i64))
    } else {
        let drop = bits - 64;
        let mut top = (mag >> drop).to_u64().unwrap_or(0);
        if mag.trailing_zeros().unwrap_or(0) < drop {
            top |= 1;
        }
        (top, drop as i64 - shift as i64)
    };
    let value = scale_pow2(mantissa as f64, exp);
    if sign == Sign::Minus {
        -value
    } else {
        value
    }
}

fn scale_pow2(mut x: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    x * 2f64.powi(exp as i32)
}
