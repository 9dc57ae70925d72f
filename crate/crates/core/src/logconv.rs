//! Conversion of positive rationals into Level-1 representations
//! (`floor(log_b(N/D))`).
//!
//! Two routes are provided. The reference searches step through
//! `(P/Q)^0, (P/Q)^1, ...` one power at a time, carrying the power as an
//! integer pair `I/J` and bounded by an iteration budget of `N*Q`. They are
//! the specification. [`floor_log_fast`] brackets the answer by exponent
//! doubling and bisects, asking [`cmp_pow`] at every step; it must agree with
//! the reference everywhere.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{LnsError, Result};
use crate::exactq::{cmp_pow, Base, PosRational};

fn require_at_least_one(value: &PosRational) -> Result<()> {
    if value.is_at_least_one() {
        Ok(())
    } else {
        Err(LnsError::BelowOne {
            value: value.to_string(),
        })
    }
}

fn exhausted(value: &PosRational, base: &Base) -> LnsError {
    LnsError::BudgetExhausted {
        value: value.to_string(),
        base: base.to_string(),
    }
}

/// Least `L >= 0` with `N/D <= (P/Q)^L`, by linear search.
pub fn ceiling_log_ge1(value: &PosRational, base: &Base) -> Result<BigUint> {
    require_at_least_one(value)?;
    let (n, d) = (value.num(), value.den());
    let (p, q) = (base.p(), base.q());
    let mut budget: BigUint = n * q;
    let mut l = BigUint::zero();
    let mut i = BigUint::one();
    let mut j = BigUint::one();
    // Continue while I/J < N/D.
    while d * &i < n * &j {
        if budget.is_zero() {
            return Err(exhausted(value, base));
        }
        budget -= 1u32;
        l += 1u32;
        i *= p;
        j *= q;
    }
    Ok(l)
}

/// Greatest `L >= 0` with `(P/Q)^L <= N/D`, by linear search under the same
/// `N*Q` budget as [`ceiling_log_ge1`].
pub fn floor_log_ge1(value: &PosRational, base: &Base) -> Result<BigUint> {
    require_at_least_one(value)?;
    let (n, d) = (value.num(), value.den());
    let (p, q) = (base.p(), base.q());
    let mut budget: BigUint = n * q;
    let mut l = BigUint::zero();
    // I/J holds (P/Q)^(L+1).
    let mut i = p.clone();
    let mut j = q.clone();
    while d * &i <= n * &j {
        if budget.is_zero() {
            return Err(exhausted(value, base));
        }
        budget -= 1u32;
        l += 1u32;
        i *= p;
        j *= q;
    }
    Ok(l)
}

/// `floor(log_b(N/D))` for any positive rational, by the reference searches:
/// values below one go through the ceiling of the reciprocal, negated.
pub fn floor_log(value: &PosRational, base: &Base) -> Result<BigInt> {
    if value.is_at_least_one() {
        floor_log_ge1(value, base).map(BigInt::from)
    } else {
        ceiling_log_ge1(&value.recip(), base).map(|c| -BigInt::from(c))
    }
}

fn pow_le(value: &PosRational, base: &Base, e: u64) -> bool {
    cmp_pow(value, base, &BigInt::from(e)) != Ordering::Less
}

/// Greatest `L >= 0` with `b^L <= value`, for `value >= 1`.
fn floor_ge1_fast(value: &PosRational, base: &Base) -> u64 {
    debug_assert!(value.is_at_least_one());
    if !pow_le(value, base, 1) {
        return 0;
    }
    // b^lo <= value < b^hi
    let mut lo: u64 = 1;
    let mut hi: u64 = 2;
    while pow_le(value, base, hi) {
        lo = hi;
        hi = hi.checked_mul(2).expect("logarithm exceeds 64 bits");
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pow_le(value, base, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Same result as [`floor_log`], computed by doubling and bisection.
pub fn floor_log_fast(value: &PosRational, base: &Base) -> BigInt {
    if value.is_at_least_one() {
        BigInt::from(floor_ge1_fast(value, base))
    } else {
        let inv = value.recip();
        let f = floor_ge1_fast(&inv, base);
        let exact = cmp_pow(&inv, base, &BigInt::from(f)) == Ordering::Equal;
        let ceil = if exact { f } else { f + 1 };
        -BigInt::from(ceil)
    }
}

/// Relative precision `F = floor(log2(log_b 2))` of a base below two.
///
/// `G = floor(log_b 2)` is found first and `F` is the bit length of `G` minus
/// one. For `y >= 1`, `floor(log2(floor(y))) = floor(log2(y))` because every
/// power of two is an integer, so no correction is needed. The defining
/// inequality `b^(2^F) <= 2 < b^(2^(F+1))` is checked before returning.
pub fn precision_of_base(base: &Base) -> Result<u32> {
    if !base.below_two() {
        return Err(LnsError::InvalidBase {
            p: base.p().clone(),
            q: base.q().clone(),
            reason: "precision requires a base below 2",
        });
    }
    let two = PosRational::integer(2);
    let g = floor_log_fast(&two, base)
        .to_u64()
        .expect("b < 2 gives floor(log_b 2) >= 1");
    let f = 63 - g.leading_zeros();
    let lower = BigInt::from(1u64) << f;
    let upper = BigInt::from(1u64) << (f + 1);
    assert!(
        cmp_pow(&two, base, &lower) != Ordering::Less && cmp_pow(&two, base, &upper) == Ordering::Less,
        "precision {f} fails its defining inequality for base {base}"
    );
    Ok(f)
}
