//! Exact comparison of a positive rational against an integer power of a
//! rational base.
//!
//! Every other module checks its answers through [`cmp_pow`]. Comparisons are
//! decided by cross-multiplication over arbitrary-precision integers: for
//! `e >= 0`, `N/D` against `(P/Q)^e` is `N * Q^e` against `D * P^e`, and for
//! `e < 0` it is `N * P^|e|` against `D * Q^|e|`.
//!
//! When the operands would be large, a cheap integer-only bracket of both
//! products (see [`bounds`]) is tried first. The bracket uses directed
//! rounding, so when it separates the two sides the answer is the same as the
//! full product comparison. Ties and near-ties always fall through to the full
//! products.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{LnsError, Result};

/// A positive rational `num/den`. Not reduced; every predicate in the crate
/// gives the same answer for `k*num / k*den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PosRational {
    num: BigUint,
    den: BigUint,
}

impl PosRational {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(LnsError::NonPositive {
                num: num.into(),
                den: den.into(),
            });
        }
        Ok(Self { num, den })
    }

    /// Builds from signed integers, rejecting zero and negative parts.
    pub fn from_signed(num: BigInt, den: BigInt) -> Result<Self> {
        match (num.sign(), den.sign()) {
            (Sign::Plus, Sign::Plus) => Ok(Self {
                num: num.into_parts().1,
                den: den.into_parts().1,
            }),
            _ => Err(LnsError::NonPositive { num, den }),
        }
    }

    /// Convenience for tests and fixtures. Panics on zero.
    pub fn from_u64(num: u64, den: u64) -> Self {
        Self::new(num.into(), den.into()).expect("positive rational")
    }

    pub fn integer(n: u64) -> Self {
        Self::from_u64(n, 1)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn recip(&self) -> Self {
        Self {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// Same value, numerator and denominator scaled by `k`.
    pub fn scaled(&self, k: &BigUint) -> Self {
        assert!(!k.is_zero(), "scale factor must be positive");
        Self {
            num: &self.num * k,
            den: &self.den * k,
        }
    }

    /// Lowest-terms form, used for display.
    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        Self {
            num: &self.num / &g,
            den: &self.den / &g,
        }
    }

    /// Exact value comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }

    pub fn is_at_least_one(&self) -> bool {
        self.num >= self.den
    }
}

/// Prints the lowest-terms form as `N/D`.
impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        write!(f, "{}/{}", r.num, r.den)
    }
}

/// A rational base `P/Q` greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Base {
    p: BigUint,
    q: BigUint,
}

impl Base {
    /// A base satisfying axiom (1): `1 < q < p < 2q`.
    pub fn new(p: BigUint, q: BigUint) -> Result<Self> {
        let base = Self::above_one(p, q)?;
        if !base.satisfies_axiom_one() {
            return Err(LnsError::InvalidBase {
                p: base.p,
                q: base.q,
                reason: "requires 1 < Q < P < 2Q",
            });
        }
        Ok(base)
    }

    /// A base only required to exceed one (`0 < q < p`). The conversion
    /// routines accept these; the table machinery does not.
    pub fn above_one(p: BigUint, q: BigUint) -> Result<Self> {
        if q.is_zero() || p <= q {
            return Err(LnsError::InvalidBase {
                p,
                q,
                reason: "requires 0 < Q < P",
            });
        }
        Ok(Self { p, q })
    }

    /// Fixture constructor for axiom-(1) bases. Panics when invalid.
    pub fn from_u64(p: u64, q: u64) -> Self {
        Self::new(p.into(), q.into()).expect("valid base")
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn satisfies_axiom_one(&self) -> bool {
        let one = BigUint::one();
        self.q > one && self.q < self.p && self.p < (&self.q << 1u32)
    }

    pub fn below_two(&self) -> bool {
        self.p < (&self.q << 1u32)
    }

    pub fn as_rational(&self) -> PosRational {
        PosRational {
            num: self.p.clone(),
            den: self.q.clone(),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Magnitude of an exponent as a machine word. Powers with larger exponents
/// would not fit in memory, let alone be compared.
pub(crate) fn exponent_magnitude(e: &BigInt) -> u64 {
    e.magnitude()
        .to_u64()
        .expect("exponent magnitude exceeds 64 bits")
}

/// Operand layout of a comparison: `lhs_coeff * lhs_base^k` against
/// `rhs_coeff * rhs_base^k`.
struct CrossProducts<'a> {
    lhs_coeff: &'a BigUint,
    lhs_base: &'a BigUint,
    rhs_coeff: &'a BigUint,
    rhs_base: &'a BigUint,
    k: u64,
}

impl<'a> CrossProducts<'a> {
    fn new(value: &'a PosRational, base: &'a Base, e: &BigInt) -> Self {
        let k = exponent_magnitude(e);
        if e.is_negative() {
            Self {
                lhs_coeff: &value.num,
                lhs_base: &base.p,
                rhs_coeff: &value.den,
                rhs_base: &base.q,
                k,
            }
        } else {
            Self {
                lhs_coeff: &value.num,
                lhs_base: &base.q,
                rhs_coeff: &value.den,
                rhs_base: &base.p,
                k,
            }
        }
    }

    fn exact(&self) -> Ordering {
        let lhs = self.lhs_coeff * Pow::pow(self.lhs_base, self.k);
        let rhs = self.rhs_coeff * Pow::pow(self.rhs_base, self.k);
        lhs.cmp(&rhs)
    }

    /// Upper estimate of the bit size of the larger full product.
    fn estimated_bits(&self) -> u128 {
        let side = |c: &BigUint, b: &BigUint| c.bits() as u128 + self.k as u128 * b.bits() as u128;
        side(self.lhs_coeff, self.lhs_base).max(side(self.rhs_coeff, self.rhs_base))
    }

    fn bracketed(&self, precision: u64) -> Option<Ordering> {
        let lhs = bounds::product_bounds(self.lhs_coeff, self.lhs_base, self.k, precision);
        let rhs = bounds::product_bounds(self.rhs_coeff, self.rhs_base, self.k, precision);
        if lhs.hi.cmp(&rhs.lo) == Ordering::Less {
            Some(Ordering::Less)
        } else if lhs.lo.cmp(&rhs.hi) == Ordering::Greater {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Products at or below this many bits are compared directly.
const DIRECT_BITS: u128 = 4096;

/// Mantissa widths tried by the bracket before falling back to full products.
const BRACKET_PRECISIONS: [u64; 3] = [128, 1024, 8192];

/// Three-way comparison of `value` against `base^e`.
pub fn cmp_pow(value: &PosRational, base: &Base, e: &BigInt) -> Ordering {
    let xp = CrossProducts::new(value, base, e);
    if xp.estimated_bits() > DIRECT_BITS {
        for precision in BRACKET_PRECISIONS {
            if let Some(ord) = xp.bracketed(precision) {
                return ord;
            }
        }
    }
    xp.exact()
}

/// [`cmp_pow`] without the bracket: always forms both full products.
pub fn cmp_pow_exact(value: &PosRational, base: &Base, e: &BigInt) -> Ordering {
    CrossProducts::new(value, base, e).exact()
}

/// `base^lo <= value <= base^hi`. Panics if `lo > hi`.
pub fn in_closed_interval(value: &PosRational, base: &Base, lo: &BigInt, hi: &BigInt) -> bool {
    assert!(lo <= hi, "in_closed_interval: lo ({lo}) > hi ({hi})");
    cmp_pow(value, base, lo) != Ordering::Less && cmp_pow(value, base, hi) != Ordering::Greater
}

/// `base^e` as a rational.
pub fn pow_rational(base: &Base, e: &BigInt) -> PosRational {
    let k = exponent_magnitude(e);
    let pk: BigUint = Pow::pow(&base.p, k);
    let qk: BigUint = Pow::pow(&base.q, k);
    if e.is_negative() {
        PosRational { num: qk, den: pk }
    } else {
        PosRational { num: pk, den: qk }
    }
}

/// `value < base^e`
pub fn l_lessp(value: &PosRational, base: &Base, e: &BigInt) -> bool {
    cmp_pow(value, base, e) == Ordering::Less
}

/// `value >= base^e`
pub fn l_geq(value: &PosRational, base: &Base, e: &BigInt) -> bool {
    !l_lessp(value, base, e)
}

/// `base^e < value`
pub fn r_lessp(base: &Base, e: &BigInt, value: &PosRational) -> bool {
    cmp_pow(value, base, e) == Ordering::Greater
}

/// `base^e >= value`
pub fn r_geq(base: &Base, e: &BigInt, value: &PosRational) -> bool {
    !r_lessp(base, e, value)
}

/// Directed-rounding brackets `[lo, hi]` for products of the form
/// `c * b^k`, with dyadic endpoints `m * 2^s` whose mantissas are truncated to
/// a fixed number of bits (down for `lo`, up for `hi`).
pub(crate) mod bounds {
    use std::cmp::Ordering;

    use num_bigint::BigUint;
    use num_traits::{One, Zero};

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub(crate) struct Dyadic {
        pub(crate) mant: BigUint,
        pub(crate) shift: u64,
    }

    impl Dyadic {
        fn one() -> Self {
            Self {
                mant: BigUint::one(),
                shift: 0,
            }
        }

        fn bit_len(&self) -> u128 {
            self.mant.bits() as u128 + self.shift as u128
        }

        fn round_down(mut self, precision: u64) -> Self {
            let bits = self.mant.bits();
            if bits > precision {
                let drop = bits - precision;
                self.mant >>= drop;
                self.shift = self.shift.checked_add(drop).expect("dyadic shift overflow");
            }
            self
        }

        fn round_up(mut self, precision: u64) -> Self {
            let bits = self.mant.bits();
            if bits > precision {
                let drop = bits - precision;
                let exact = self.mant.trailing_zeros().is_some_and(|tz| tz >= drop);
                self.mant >>= drop;
                if !exact {
                    self.mant += 1u32;
                }
                self.shift = self.shift.checked_add(drop).expect("dyadic shift overflow");
            }
            self
        }

        fn mul(&self, other: &Self) -> Self {
            Self {
                mant: &self.mant * &other.mant,
                shift: self
                    .shift
                    .checked_add(other.shift)
                    .expect("dyadic shift overflow"),
            }
        }

        /// Exact comparison of the represented integers.
        pub(crate) fn cmp(&self, other: &Self) -> Ordering {
            debug_assert!(!self.mant.is_zero() && !other.mant.is_zero());
            match self.bit_len().cmp(&other.bit_len()) {
                Ordering::Equal => {}
                ord => return ord,
            }
            // Same total length, so the shift gap is bounded by the mantissa widths.
            if self.shift >= other.shift {
                let a = &self.mant << (self.shift - other.shift);
                a.cmp(&other.mant)
            } else {
                let b = &other.mant << (other.shift - self.shift);
                self.mant.cmp(&b)
            }
        }
    }

    pub(crate) struct Bracket {
        pub(crate) lo: Dyadic,
        pub(crate) hi: Dyadic,
    }

    fn exact(x: &BigUint) -> Dyadic {
        Dyadic {
            mant: x.clone(),
            shift: 0,
        }
    }

    fn pow_bound(base: &Dyadic, k: u64, precision: u64, up: bool) -> Dyadic {
        let round = |d: Dyadic| {
            if up {
                d.round_up(precision)
            } else {
                d.round_down(precision)
            }
        };
        let mut acc = Dyadic::one();
        if k == 0 {
            return acc;
        }
        for i in (0..64 - k.leading_zeros()).rev() {
            acc = round(acc.mul(&acc));
            if (k >> i) & 1 == 1 {
                acc = round(acc.mul(base));
            }
        }
        acc
    }

    /// Bracket of `coeff * base^k`.
    pub(crate) fn product_bounds(coeff: &BigUint, base: &BigUint, k: u64, precision: u64) -> Bracket {
        let base_lo = exact(base).round_down(precision);
        let base_hi = exact(base).round_up(precision);
        let coeff_lo = exact(coeff).round_down(precision);
        let coeff_hi = exact(coeff).round_up(precision);
        let lo = coeff_lo
            .mul(&pow_bound(&base_lo, k, precision, false))
            .round_down(precision);
        let hi = coeff_hi
            .mul(&pow_bound(&base_hi, k, precision, true))
            .round_up(precision);
        Bracket { lo, hi }
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use num_traits::Pow;
        use proptest::prelude::*;

        fn value(d: &Dyadic) -> BigUint {
            &d.mant << d.shift
        }

        proptest! {
            #[test]
            fn bracket_contains_product(c in 1u64..1_000_000, b in 2u64..100_000, k in 0u64..300, prec in 8u64..80) {
                let c = BigUint::from(c);
                let b = BigUint::from(b);
                let exact: BigUint = &c * Pow::pow(&b, k);
                let br = product_bounds(&c, &b, k, prec);
                prop_assert!(value(&br.lo) <= exact);
                prop_assert!(value(&br.hi) >= exact);
            }

            #[test]
            fn dyadic_cmp_matches_integers(a in 1u64..u64::MAX, sa in 0u64..70, b in 1u64..u64::MAX, sb in 0u64..70) {
                let x = Dyadic { mant: a.into(), shift: sa };
                let y = Dyadic { mant: b.into(), shift: sb };
                prop_assert_eq!(x.cmp(&y), value(&x).cmp(&value(&y)));
            }
        }

        #[test]
        fn round_up_of_exact_multiple_is_unchanged() {
            let d = Dyadic { mant: BigUint::from(0b1010_0000u32), shift: 3 };
            let r = d.clone().round_up(3);
            assert_eq!(value(&r), value(&d));
        }
    }
}
