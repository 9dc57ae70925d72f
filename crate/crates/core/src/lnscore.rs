//! Level 1 of the logarithmic number system.
//!
//! A positive value `x` is represented by the integer `floor(log_b x)`.
//! Multiplication and division are integer addition and subtraction.
//! Addition goes through the quantized addition logarithm
//! `S(Z) = floor(log_b(b^Z + 1))`, which is implemented from a finite table
//! `ST(0..=SEZ)` and its two asymptotes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use crate::error::{LnsError, Result};
use crate::exactq::{cmp_pow, exponent_magnitude, Base, PosRational};
use crate::logconv::floor_log_fast;

/// A Level-1 representation: the integer `Z` standing for `b^Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rep(pub BigInt);

impl Rep {
    pub fn z(&self) -> &BigInt {
        &self.0
    }
}

impl From<i64> for Rep {
    fn from(z: i64) -> Self {
        Rep(BigInt::from(z))
    }
}

impl From<BigInt> for Rep {
    fn from(z: BigInt) -> Self {
        Rep(z)
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `b^z + 1` as a rational.
pub fn pow_plus_one(base: &Base, z: &BigInt) -> PosRational {
    let k = exponent_magnitude(z);
    let pk: BigUint = Pow::pow(base.p(), k);
    let qk: BigUint = Pow::pow(base.q(), k);
    let sum = &pk + &qk;
    let den = if z.is_negative() { pk } else { qk };
    PosRational::new(sum, den).expect("positive")
}

fn require_axiom_one(base: &Base) -> Result<()> {
    if base.satisfies_axiom_one() {
        Ok(())
    } else {
        Err(LnsError::InvalidBase {
            p: base.p().clone(),
            q: base.q().clone(),
            reason: "requires 1 < Q < P < 2Q",
        })
    }
}

fn to_u64(v: BigInt, what: &str) -> u64 {
    v.to_u64().unwrap_or_else(|| panic!("{what} does not fit in 64 bits: {v}"))
}

/// `SEZ_PQ = floor(log_b(Q / (P - Q)))`.
///
/// Bases above the golden ratio give zero here, which fails axiom (2).
pub fn sez_pq(base: &Base) -> Result<u64> {
    require_axiom_one(base)?;
    let arg = PosRational::new(base.q().clone(), base.p() - base.q()).expect("P > Q");
    Ok(to_u64(floor_log_fast(&arg, base), "SEZ"))
}

fn st_unchecked(z: u64, base: &Base) -> u64 {
    let v = pow_plus_one(base, &BigInt::from(z));
    to_u64(floor_log_fast(&v, base), "ST entry")
}

/// `ST_PQ(z) = floor(log_b(b^z + 1))` for `0 <= z <= SEZ_PQ`.
pub fn st_pq(z: u64, base: &Base) -> Result<u64> {
    let sez = sez_pq(base)?;
    if z > sez {
        return Err(LnsError::IndexOutOfTable {
            z: z.to_string(),
            sez,
        });
    }
    Ok(st_unchecked(z, base))
}

/// The constant `SEZ` and table `ST(0..=SEZ)` for one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTable {
    base: Base,
    sez: u64,
    st: Vec<u64>,
}

impl SumTable {
    /// Assembles a table without checking any axiom. `st` must hold exactly
    /// `sez + 1` entries.
    pub fn from_parts(base: Base, sez: u64, st: Vec<u64>) -> Result<Self> {
        if st.len() as u64 != sez + 1 {
            return Err(LnsError::TableFormat {
                line: 0,
                msg: format!("expected {} entries for SEZ = {sez}, got {}", sez + 1, st.len()),
            });
        }
        Ok(Self { base, sez, st })
    }

    /// Assembles a table and rejects it unless every axiom holds.
    pub fn checked(base: Base, sez: u64, st: Vec<u64>) -> Result<Self> {
        let table = Self::from_parts(base, sez, st)?;
        verify_axioms(&table).into_result()?;
        Ok(table)
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn sez(&self) -> u64 {
        self.sez
    }

    pub fn entries(&self) -> &[u64] {
        &self.st
    }

    pub fn st(&self, z: u64) -> Option<u64> {
        self.st.get(usize::try_from(z).ok()?).copied()
    }
}

/// Computes `SEZ_PQ` and `ST_PQ` for every index with no axiom check. Used
/// by diagnostics that want to report on bases the axioms reject.
pub fn compute_table_unchecked(base: &Base) -> Result<SumTable> {
    let sez = sez_pq(base)?;
    let st = (0..=sez).map(|z| st_unchecked(z, base)).collect();
    SumTable::from_parts(base.clone(), sez, st)
}

/// Builds the table for `base` and checks it against axioms (1)-(5).
pub fn build_table(base: &Base) -> Result<SumTable> {
    let table = compute_table_unchecked(base)?;
    verify_axioms(&table).into_result()?;
    Ok(table)
}

/// Outcome of one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: u8,
    pub holds: bool,
    /// First failing table index, for the per-entry axioms (4) and (5).
    pub witness: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.holds)
    }

    pub fn get(&self, axiom: u8) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(LnsError::AxiomViolation {
                axiom: c.axiom,
                witness: c.witness,
            }),
        }
    }
}

fn entrywise(table: &SumTable, mut ok: impl FnMut(u64, u64) -> bool) -> Option<u64> {
    (0u64..)
        .zip(table.st.iter().copied())
        .find(|&(z, st)| !ok(z, st))
        .map(|(z, _)| z)
}

/// Re-checks axioms (1)-(5) from scratch.
pub fn verify_axioms(table: &SumTable) -> AxiomReport {
    let base = &table.base;
    let sez = table.sez;
    let mut checks = Vec::with_capacity(5);

    checks.push(AxiomCheck {
        axiom: 1,
        holds: base.satisfies_axiom_one(),
        witness: None,
    });
    checks.push(AxiomCheck {
        axiom: 2,
        holds: sez > 0,
        witness: None,
    });

    // b^(SEZ+1) + 1 < b^(SEZ+2)
    let lhs = pow_plus_one(base, &BigInt::from(sez + 1));
    checks.push(AxiomCheck {
        axiom: 3,
        holds: cmp_pow(&lhs, base, &BigInt::from(sez + 2)) == Ordering::Less,
        witness: None,
    });

    let w4 = entrywise(table, |_, st| st > 0);
    checks.push(AxiomCheck {
        axiom: 4,
        holds: w4.is_none(),
        witness: w4,
    });

    // b^ST(Z) <= b^Z + 1 < b^(ST(Z)+1)
    let w5 = entrywise(table, |z, st| {
        let v = pow_plus_one(base, &BigInt::from(z));
        cmp_pow(&v, base, &BigInt::from(st)) != Ordering::Less
            && cmp_pow(&v, base, &BigInt::from(st + 1)) == Ordering::Less
    });
    checks.push(AxiomCheck {
        axiom: 5,
        holds: w5.is_none(),
        witness: w5,
    });

    AxiomReport { checks }
}

/// The quantized addition logarithm `S(z)`, defined for every integer.
pub fn s_quantized(table: &SumTable, z: &BigInt) -> BigInt {
    let sez = BigInt::from(table.sez);
    let st_at = |i: &BigInt| {
        let idx = i.to_u64().expect("index within table");
        BigInt::from(table.st(idx).expect("index within table"))
    };
    if z < &-&sez {
        BigInt::zero()
    } else if z.is_negative() {
        z + st_at(&-z)
    } else if z <= &sez {
        st_at(z)
    } else {
        z.clone()
    }
}

/// Whether `b^S(z) <= b^z + 1 < b^(S(z)+1)`.
pub fn s_bracket_holds(table: &SumTable, z: &BigInt) -> bool {
    let base = &table.base;
    let v = pow_plus_one(base, z);
    let s = s_quantized(table, z);
    cmp_pow(&v, base, &s) != Ordering::Less && cmp_pow(&v, base, &(s + 1)) == Ordering::Less
}

/// Whether `z` represents `value` exactly, i.e. `value = b^z`.
pub fn exact_rep(z: &Rep, value: &PosRational, base: &Base) -> bool {
    cmp_pow(value, base, &z.0) == Ordering::Equal
}

pub fn mult_level_1(x: &Rep, y: &Rep) -> Rep {
    Rep(&x.0 + &y.0)
}

pub fn div_level_1(x: &Rep, y: &Rep) -> Rep {
    Rep(&x.0 - &y.0)
}

/// Level-1 addition by the four cases on `X - Y`.
pub fn add_level_1(table: &SumTable, x: &Rep, y: &Rep) -> Rep {
    let diff = &x.0 - &y.0;
    let sez = BigInt::from(table.sez);
    let st_at = |i: &BigInt| BigInt::from(table.st(i.to_u64().expect("in table")).expect("in table"));
    let z = if diff < -&sez {
        y.0.clone()
    } else if diff.is_negative() {
        &x.0 + st_at(&-&diff)
    } else if diff <= sez {
        &y.0 + st_at(&diff)
    } else {
        x.0.clone()
    };
    Rep(z)
}

/// Results of the `S` property sweeps over a range of `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub lo: i64,
    pub hi: i64,
    /// First `Z` breaking `b^S(Z) <= b^Z + 1 < b^(S(Z)+1)`.
    pub bracket_failure: Option<i64>,
    /// First `Z` breaking `S(Z) = S(-Z) + Z`.
    pub reflection_failure: Option<i64>,
    /// First `Z` breaking `0 <= S(Z+1) - S(Z) <= 1`.
    pub difference_failure: Option<i64>,
}

impl SweepReport {
    pub fn all_hold(&self) -> bool {
        self.bracket_failure.is_none() && self.reflection_failure.is_none() && self.difference_failure.is_none()
    }
}

/// Sweeps `Z` over `[-3*SEZ, 3*SEZ]`, truncated to at most `cap` values
/// centred on zero.
pub fn sweep_s_properties(table: &SumTable, cap: u64) -> SweepReport {
    let span = (3 * table.sez).max(1);
    let half = span.min(cap.saturating_sub(1) / 2) as i64;
    let (lo, hi) = (-half, half);
    let s = |z: i64| s_quantized(table, &BigInt::from(z));
    let bracket_failure = (lo..=hi).find(|&z| !s_bracket_holds(table, &BigInt::from(z)));
    let reflection_failure = (lo..=hi).find(|&z| s(z) != s(-z) + z);
    let difference_failure = (lo..=hi).find(|&z| {
        let d = s(z + 1) - s(z);
        d.is_negative() || d > BigInt::from(1)
    });
    SweepReport {
        lo,
        hi,
        bracket_failure,
        reflection_failure,
        difference_failure,
    }
}
