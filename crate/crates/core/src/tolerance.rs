//! Tolerances: integer offsets `(T_L, T_H)` certifying that a tracked value
//! lies in the closed interval `[b^(Z+T_L), b^(Z+T_H)]` around its
//! representation `Z`.
//!
//! A tolerance of `(0, 0)` is exactly an exact representation. The
//! propagation rules below say how tolerances combine through Level-1
//! multiplication, reciprocal, division and addition.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{LnsError, Result};
use crate::exactq::{in_closed_interval, Base, PosRational};
use crate::lnscore::{s_quantized, Rep, SumTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tolerance {
    lo: i64,
    hi: i64,
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance { lo: 0, hi: 0 };
    /// What a floor conversion guarantees.
    pub const FLOOR: Tolerance = Tolerance { lo: 0, hi: 1 };

    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(LnsError::InvalidTolerance { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo
    }

    /// Whether `other`'s interval lies inside this one.
    pub fn contains(&self, other: &Tolerance) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// A representation with its tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TolRep {
    pub rep: Rep,
    pub tol: Tolerance,
}

impl TolRep {
    pub fn new(rep: Rep, tol: Tolerance) -> Self {
        Self { rep, tol }
    }

    pub fn lower_exponent(&self) -> BigInt {
        &self.rep.0 + self.tol.lo
    }

    pub fn upper_exponent(&self) -> BigInt {
        &self.rep.0 + self.tol.hi
    }
}

/// `b^(Z+T_L) <= value <= b^(Z+T_H)`.
pub fn tol_holds(base: &Base, tr: &TolRep, value: &PosRational) -> bool {
    in_closed_interval(value, base, &tr.lower_exponent(), &tr.upper_exponent())
}

/// Tolerances add under multiplication.
pub fn tol_mult(x: Tolerance, y: Tolerance) -> Tolerance {
    Tolerance {
        lo: x.lo + y.lo,
        hi: x.hi + y.hi,
    }
}

/// Negated and swapped.
pub fn tol_recip(x: Tolerance) -> Tolerance {
    Tolerance { lo: -x.hi, hi: -x.lo }
}

pub fn tol_div(x: Tolerance, y: Tolerance) -> Tolerance {
    Tolerance {
        lo: x.lo - y.hi,
        hi: x.hi - y.lo,
    }
}

fn small(v: BigInt) -> i64 {
    v.to_i64().expect("tolerance offset fits in 64 bits")
}

/// Tolerance of the Level-1 sum using the operand representations.
///
/// The result representation is anchored at `X`: `Z = X + S(Y - X)`. With
/// `D = Y - X`,
///
/// ```text
/// T_LA = T_LX + S(D + T_LY - T_LX) - S(D)
/// T_HA = T_HX + S(D + T_HY - T_HX) - S(D) + 1
/// ```
pub fn tol_add_tight(table: &SumTable, x: &TolRep, y: &TolRep) -> TolRep {
    let d = &y.rep.0 - &x.rep.0;
    let s_d = s_quantized(table, &d);
    let s_lo = s_quantized(table, &(&d + (y.tol.lo - x.tol.lo)));
    let s_hi = s_quantized(table, &(&d + (y.tol.hi - x.tol.hi)));
    let lo = x.tol.lo + small(s_lo - &s_d);
    let hi = x.tol.hi + small(s_hi - &s_d) + 1;
    TolRep {
        rep: Rep(&x.rep.0 + s_d),
        tol: Tolerance { lo, hi },
    }
}

/// Representation-free bound on the sum's tolerance:
/// `(min(T_LX, T_LY), max(T_HX, T_HY) + 1)`.
///
/// Follows from `0 <= S(Z + k) - S(Z) <= k` for `k >= 0` (and the mirror
/// statement for `k <= 0`) applied to the tight formulas. The bound is
/// symmetric in its operands.
pub fn tol_add_loose(x: Tolerance, y: Tolerance) -> Tolerance {
    Tolerance {
        lo: x.lo.min(y.lo),
        hi: x.hi.max(y.hi) + 1,
    }
}
