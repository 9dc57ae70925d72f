//! Level 2: Level-1 arithmetic with a bounded representation range.
//!
//! Any operation whose operands or result fall outside `[min, max]` yields the
//! single out-of-range signal, encoded as `max + 1`. Because the signal is
//! itself outside the range, it poisons every later operation.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{LnsError, Result};
use crate::expr::{convert_literal, Expr};
use crate::lnscore::{add_level_1, div_level_1, mult_level_1, Rep, SumTable};
use crate::logconv::floor_log_fast;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeConfig {
    min: BigInt,
    max: BigInt,
}

impl RangeConfig {
    pub fn new(min: BigInt, max: BigInt) -> Result<Self> {
        if min >= max {
            return Err(LnsError::InvalidRange { min, max });
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> &BigInt {
        &self.min
    }

    pub fn max(&self) -> &BigInt {
        &self.max
    }

    /// `max + 1`
    pub fn sentinel(&self) -> BigInt {
        &self.max + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level2Value {
    InRange(Rep),
    OutOfRange,
}

impl Level2Value {
    /// The integer a Level-2 machine would hold: the representation, or the
    /// out-of-range sentinel `max + 1`.
    pub fn to_raw(&self, cfg: &RangeConfig) -> BigInt {
        match self {
            Level2Value::InRange(r) => r.0.clone(),
            Level2Value::OutOfRange => cfg.sentinel(),
        }
    }

    pub fn is_in_range(&self) -> bool {
        matches!(self, Level2Value::InRange(_))
    }

    pub fn display<'a>(&'a self, cfg: &'a RangeConfig) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Level2Value, &'a RangeConfig);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0 {
                    Level2Value::InRange(r) => write!(f, "{r}"),
                    Level2Value::OutOfRange => write!(f, "OUT-OF-RANGE {}", self.1.sentinel()),
                }
            }
        }
        D(self, cfg)
    }
}

pub fn in_range(cfg: &RangeConfig, z: &BigInt) -> bool {
    &cfg.min <= z && z <= &cfg.max
}

pub fn clip(cfg: &RangeConfig, x: &BigInt, y: &BigInt, result: BigInt) -> Level2Value {
    if in_range(cfg, x) && in_range(cfg, y) && in_range(cfg, &result) {
        Level2Value::InRange(Rep(result))
    } else {
        Level2Value::OutOfRange
    }
}

pub fn mult_level_2(cfg: &RangeConfig, x: &BigInt, y: &BigInt) -> Level2Value {
    let r = mult_level_1(&Rep(x.clone()), &Rep(y.clone()));
    clip(cfg, x, y, r.0)
}

pub fn div_level_2(cfg: &RangeConfig, x: &BigInt, y: &BigInt) -> Level2Value {
    let r = div_level_1(&Rep(x.clone()), &Rep(y.clone()));
    clip(cfg, x, y, r.0)
}

pub fn add_level_2(cfg: &RangeConfig, table: &SumTable, x: &BigInt, y: &BigInt) -> Level2Value {
    let r = add_level_1(table, &Rep(x.clone()), &Rep(y.clone()));
    clip(cfg, x, y, r.0)
}

/// Evaluates an expression on a Level-2 machine. Converted literals outside
/// the range are out of range themselves.
pub fn eval_level2(cfg: &RangeConfig, table: &SumTable, expr: &Expr) -> Result<Level2Value> {
    let leaf = |z: BigInt| {
        if in_range(cfg, &z) {
            Level2Value::InRange(Rep(z))
        } else {
            Level2Value::OutOfRange
        }
    };
    let v = match expr {
        Expr::Lit(v) => leaf(convert_literal(table.base(), v).rep.0),
        Expr::Input(v, _) => leaf(floor_log_fast(v, table.base())),
        Expr::Sub(..) => return Err(LnsError::Unsupported("subtraction has no Level-2 implementation")),
        Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Add(a, b) => {
            let x = eval_level2(cfg, table, a)?.to_raw(cfg);
            let y = eval_level2(cfg, table, b)?.to_raw(cfg);
            match expr {
                Expr::Mul(..) => mult_level_2(cfg, &x, &y),
                Expr::Div(..) => div_level_2(cfg, &x, &y),
                _ => add_level_2(cfg, table, &x, &y),
            }
        }
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::Base;
    use crate::expr::parse_expr;
    use crate::lnscore::build_table;

    fn cfg() -> RangeConfig {
        RangeConfig::new((-8).into(), 8.into()).unwrap()
    }

    fn z(v: i64) -> BigInt {
        v.into()
    }

    #[test]
    fn range_examples() {
        assert!(in_range(&cfg(), &z(0)));
        assert!(!in_range(&cfg(), &z(9)));
        assert!(in_range(&cfg(), &z(-8)));
        assert!(in_range(&cfg(), &z(8)));
        assert!(!in_range(&cfg(), &z(-9)));
        assert!(RangeConfig::new(z(3), z(3)).is_err());
    }

    #[test]
    fn clip_examples() {
        assert_eq!(clip(&cfg(), &z(1), &z(2), z(3)), Level2Value::InRange(Rep::from(3)));
        assert_eq!(clip(&cfg(), &z(9), &z(2), z(3)), Level2Value::OutOfRange);
        assert_eq!(clip(&cfg(), &z(1), &z(2), z(-9)), Level2Value::OutOfRange);
    }

    #[test]
    fn op_examples() {
        let table = build_table(&Base::from_u64(3, 2)).unwrap();
        assert_eq!(mult_level_2(&cfg(), &z(3), &z(4)), Level2Value::InRange(Rep::from(7)));
        assert_eq!(mult_level_2(&cfg(), &z(5), &z(5)), Level2Value::OutOfRange);
        assert_eq!(div_level_2(&cfg(), &z(-5), &z(5)), Level2Value::OutOfRange);
        assert_eq!(add_level_2(&cfg(), &table, &z(0), &z(0)), Level2Value::InRange(Rep::from(1)));
        assert_eq!(Level2Value::OutOfRange.to_raw(&cfg()), z(9));
        assert_eq!(Level2Value::OutOfRange.display(&cfg()).to_string(), "OUT-OF-RANGE 9");
    }

    #[test]
    fn sentinel_poisons() {
        let table = build_table(&Base::from_u64(3, 2)).unwrap();
        let c = cfg();
        let s = c.sentinel();
        assert!(!in_range(&c, &s));
        assert_eq!(mult_level_2(&c, &s, &z(-9)), Level2Value::OutOfRange);
        assert_eq!(add_level_2(&c, &table, &z(0), &s), Level2Value::OutOfRange);
    }

    #[test]
    fn eval_clips_literals() {
        let table = build_table(&Base::from_u64(3, 2)).unwrap();
        let c = RangeConfig::new(z(0), z(1)).unwrap();
        let e = parse_expr("2").unwrap();
        assert_eq!(eval_level2(&c, &table, &e).unwrap(), Level2Value::InRange(Rep::from(1)));
        let c0 = RangeConfig::new(z(-1), z(0)).unwrap();
        assert_eq!(eval_level2(&c0, &table, &e).unwrap(), Level2Value::OutOfRange);
        let e = parse_expr("3/2*3/2 + 1").unwrap();
        assert_eq!(eval_level2(&cfg(), &table, &e).unwrap(), Level2Value::InRange(Rep::from(2)));
    }
}
