//! Tolerance-certified evaluation of straight-line arithmetic expressions.
//!
//! Each node is evaluated twice at once: in Level-1 arithmetic, carrying a
//! representation and a tolerance, and exactly over the rationals. The
//! certificate is checked against the exact value before it is returned.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::error::{LnsError, Result};
use crate::exactq::{Base, PosRational};
use crate::lnscore::{add_level_1, div_level_1, exact_rep, mult_level_1, Rep, SumTable};
use crate::logconv::floor_log_fast;
use crate::tolerance::{tol_add_loose, tol_add_tight, tol_div, tol_holds, tol_mult, TolRep, Tolerance};

/// Which addition rule to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AddMode {
    /// Uses the operand representations.
    Tight,
    /// Uses only the operand tolerances.
    Loose,
}

impl std::str::FromStr for AddMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "tight" => Ok(AddMode::Tight),
            "loose" => Ok(AddMode::Loose),
            other => Err(format!("unknown addition mode {other:?} (expected tight or loose)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Converted with a floor: tolerance `(0,0)` when exact, else `(0,1)`.
    Lit(PosRational),
    /// A value converted with a floor but declared with the given tolerance,
    /// as for a program input whose conversion is not known to be exact.
    Input(PosRational, Tolerance),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn lit(v: PosRational) -> Self {
        Expr::Lit(v)
    }

    pub fn int(n: u64) -> Self {
        Expr::Lit(PosRational::integer(n))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Self {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Lit(_) | Expr::Input(..) => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(v) | Expr::Input(v, _) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

/// A certified result: representation with tolerance, and the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certified {
    pub tol_rep: TolRep,
    pub value: PosRational,
}

/// Converts a literal, `(0,0)` if exact and `(0,1)` otherwise.
pub fn convert_literal(base: &Base, v: &PosRational) -> TolRep {
    let rep = Rep(floor_log_fast(v, base));
    let tol = if exact_rep(&rep, v, base) {
        Tolerance::EXACT
    } else {
        Tolerance::FLOOR
    };
    TolRep::new(rep, tol)
}

fn checked(base: &Base, node: &Expr, c: Certified) -> Result<Certified> {
    if tol_holds(base, &c.tol_rep, &c.value) {
        Ok(c)
    } else {
        Err(LnsError::Unsound(format!(
            "Z={} tolerance {} does not contain {} at node {node}",
            c.tol_rep.rep, c.tol_rep.tol, c.value
        )))
    }
}

/// Evaluates `expr` bottom-up in Level-1 arithmetic with tolerance tracking,
/// alongside its exact rational value, and checks every node's certificate.
pub fn certify_expression(table: &SumTable, expr: &Expr, mode: AddMode) -> Result<Certified> {
    let base = table.base();
    let c = match expr {
        Expr::Lit(v) => Certified {
            tol_rep: convert_literal(base, v),
            value: v.clone(),
        },
        Expr::Input(v, tol) => Certified {
            tol_rep: TolRep::new(Rep(floor_log_fast(v, base)), *tol),
            value: v.clone(),
        },
        Expr::Sub(..) => {
            return Err(LnsError::Unsupported("subtraction has no Level-1 implementation"));
        }
        Expr::Mul(a, b) => {
            let (x, y) = (certify_expression(table, a, mode)?, certify_expression(table, b, mode)?);
            Certified {
                tol_rep: TolRep::new(
                    mult_level_1(&x.tol_rep.rep, &y.tol_rep.rep),
                    tol_mult(x.tol_rep.tol, y.tol_rep.tol),
                ),
                value: x.value.mul(&y.value),
            }
        }
        Expr::Div(a, b) => {
            let (x, y) = (certify_expression(table, a, mode)?, certify_expression(table, b, mode)?);
            Certified {
                tol_rep: TolRep::new(
                    div_level_1(&x.tol_rep.rep, &y.tol_rep.rep),
                    tol_div(x.tol_rep.tol, y.tol_rep.tol),
                ),
                value: x.value.div(&y.value),
            }
        }
        Expr::Add(a, b) => {
            let (x, y) = (certify_expression(table, a, mode)?, certify_expression(table, b, mode)?);
            let tol_rep = match mode {
                AddMode::Tight => tol_add_tight(table, &x.tol_rep, &y.tol_rep),
                AddMode::Loose => TolRep::new(
                    add_level_1(table, &x.tol_rep.rep, &y.tol_rep.rep),
                    tol_add_loose(x.tol_rep.tol, y.tol_rep.tol),
                ),
            };
            Certified {
                tol_rep,
                value: x.value.add(&y.value),
            }
        }
    };
    checked(base, expr, c)
}

/// Summation order for the cubic Taylor polynomial of `exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumOrder {
    /// `x^3/6 + (x^2/2 + (x + 1))`
    Forward,
    /// `1 + (x + (x^2/2 + x^3/6))`
    Reversed,
}

/// `1 + x + x^2/2 + x^3/6` with `x` entered with tolerance `x_tol`.
pub fn taylor_exp_tree(x: &PosRational, x_tol: Tolerance, order: SumOrder) -> Expr {
    let xv = || Expr::Input(x.clone(), x_tol);
    let cube = Expr::div(Expr::mul(xv(), Expr::mul(xv(), xv())), Expr::int(6));
    let square = Expr::div(Expr::mul(xv(), xv()), Expr::int(2));
    match order {
        SumOrder::Forward => Expr::add(cube, Expr::add(square, Expr::add(xv(), Expr::int(1)))),
        SumOrder::Reversed => Expr::add(Expr::int(1), Expr::add(xv(), Expr::add(square, cube))),
    }
}

/// `1 + x + x^2/2 + x^3/6`, exactly.
pub fn taylor_exp_exact(x: &PosRational) -> PosRational {
    let one = PosRational::one();
    let x2 = x.mul(x);
    let x3 = x2.mul(x);
    one.add(x)
        .add(&x2.div(&PosRational::integer(2)))
        .add(&x3.div(&PosRational::integer(6)))
}

/// Parses the expression syntax.
///
/// ```text
/// expr    := term ('+' term)*
/// term    := factor (('*' | '/') factor)*
/// factor  := literal | '(' expr ')'
/// literal := digits | digits '/' digits      (no spaces inside a literal)
/// ```
///
/// A slash written directly between two digit runs, as in `3/2`, belongs to
/// a rational literal; `3 / 2` or `(3)/2` is a division. Operators are
/// left-associative. `-` is rejected.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> LnsError {
        match self.src.get(self.pos) {
            Some(b'-') => LnsError::Subtraction { pos: self.pos },
            Some(&c) => LnsError::Parse {
                pos: self.pos,
                msg: format!("unexpected character {:?}", c as char),
            },
            None => LnsError::Parse {
                pos: self.pos,
                msg: "unexpected end of input".to_string(),
            },
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::add(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::mul(lhs, self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::div(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(LnsError::Parse {
                        pos: self.pos,
                        msg: "expected ')'".to_string(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            _ => Err(self.unexpected()),
        }
    }

    fn digits(&mut self) -> BigUint {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .expect("digit run")
    }

    fn literal(&mut self) -> Result<Expr> {
        let start = self.pos;
        let num = self.digits();
        let den = if self.src.get(self.pos) == Some(&b'/') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
            self.digits()
        } else {
            BigUint::from(1u32)
        };
        PosRational::new(num, den).map(Expr::Lit).map_err(|_| LnsError::Parse {
            pos: start,
            msg: "literals must be positive".to_string(),
        })
    }
}

/// Parses `N` or `N/D` as a positive rational (command-line values).
pub fn parse_rational(text: &str) -> Result<PosRational> {
    let bad = |msg: &str| LnsError::Parse { pos: 0, msg: format!("{msg}: {text:?}") };
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad("not a rational"))?;
    let d: BigInt = d.trim().parse().map_err(|_| bad("not a rational"))?;
    PosRational::from_signed(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lnscore::build_table;

    fn t(lo: i64, hi: i64) -> Tolerance {
        Tolerance::new(lo, hi).unwrap()
    }

    fn table(p: u64, q: u64) -> SumTable {
        build_table(&Base::from_u64(p, q)).unwrap()
    }

    #[test]
    fn certify_examples() {
        let tb = table(3, 2);
        let one = certify_expression(&tb, &Expr::int(1), AddMode::Loose).unwrap();
        assert_eq!(one.tol_rep, TolRep::new(Rep::from(0), t(0, 0)));
        assert_eq!(one.value, PosRational::one());

        let sq = parse_expr("3/2*3/2").unwrap();
        let c = certify_expression(&tb, &sq, AddMode::Tight).unwrap();
        assert_eq!(c.tol_rep, TolRep::new(Rep::from(2), t(0, 0)));
        assert_eq!(c.value.to_string(), "9/4");

        let c = certify_expression(&tb, &parse_expr("1+1").unwrap(), AddMode::Loose).unwrap();
        assert_eq!(c.tol_rep, TolRep::new(Rep::from(1), t(0, 1)));
    }

    #[test]
    fn taylor_certificates() {
        for (p, q) in [(3, 2), (4, 3)] {
            let tb = table(p, q);
            let x = PosRational::from_u64(1, 3);
            let fwd = certify_expression(&tb, &taylor_exp_tree(&x, Tolerance::FLOOR, SumOrder::Forward), AddMode::Loose).unwrap();
            assert_eq!(fwd.tol_rep.tol, t(-1, 4));
            assert_eq!(fwd.value.cmp_value(&taylor_exp_exact(&x)), std::cmp::Ordering::Equal);
            let rev = certify_expression(&tb, &taylor_exp_tree(&x, Tolerance::FLOOR, SumOrder::Reversed), AddMode::Loose).unwrap();
            assert_eq!(rev.tol_rep.tol, t(-1, 6));
        }
    }

    #[test]
    fn taylor_certificate_ignores_exactness_of_input() {
        let b = Base::from_u64(3, 2);
        let tb = build_table(&b).unwrap();
        let x = crate::exactq::pow_rational(&b, &2.into());
        let c = certify_expression(&tb, &taylor_exp_tree(&x, Tolerance::FLOOR, SumOrder::Forward), AddMode::Loose).unwrap();
        assert_eq!(c.tol_rep.tol, t(-1, 4));
    }

    #[test]
    fn subtraction_node_is_unsupported() {
        let tb = table(3, 2);
        let e = Expr::Sub(Box::new(Expr::int(3)), Box::new(Expr::int(2)));
        assert!(matches!(certify_expression(&tb, &e, AddMode::Loose), Err(LnsError::Unsupported(_))));
    }

    #[test]
    fn parser_precedence_and_literals() {
        assert_eq!(
            parse_expr("1 + 2 * 3").unwrap(),
            Expr::add(Expr::int(1), Expr::mul(Expr::int(2), Expr::int(3)))
        );
        assert_eq!(
            parse_expr("6 / 2 / 3").unwrap(),
            Expr::div(Expr::div(Expr::int(6), Expr::int(2)), Expr::int(3))
        );
        assert_eq!(parse_expr("3/2").unwrap(), Expr::lit(PosRational::from_u64(3, 2)));
        assert_eq!(
            parse_expr("1/2/3").unwrap(),
            Expr::div(Expr::lit(PosRational::from_u64(1, 2)), Expr::int(3))
        );
        assert_eq!(
            parse_expr("(1+2)*3").unwrap(),
            Expr::mul(Expr::add(Expr::int(1), Expr::int(2)), Expr::int(3))
        );
        assert_eq!(parse_expr("1+2+3").unwrap(), Expr::add(Expr::add(Expr::int(1), Expr::int(2)), Expr::int(3)));
    }

    #[test]
    fn parser_errors() {
        assert_eq!(parse_expr("3 - 1").unwrap_err(), LnsError::Subtraction { pos: 2 });
        assert_eq!(parse_expr("-1").unwrap_err(), LnsError::Subtraction { pos: 0 });
        assert!(matches!(parse_expr("0").unwrap_err(), LnsError::Parse { pos: 0, .. }));
        assert!(matches!(parse_expr("2/0").unwrap_err(), LnsError::Parse { pos: 0, .. }));
        assert!(matches!(parse_expr("(1+2").unwrap_err(), LnsError::Parse { pos: 4, .. }));
        assert!(matches!(parse_expr("1+").unwrap_err(), LnsError::Parse { pos: 2, .. }));
        assert!(matches!(parse_expr("1 x").unwrap_err(), LnsError::Parse { pos: 2, .. }));
        assert!(matches!(parse_expr("").unwrap_err(), LnsError::Parse { .. }));
    }

    #[test]
    fn parse_rational_values() {
        assert_eq!(parse_rational("3/2").unwrap(), PosRational::from_u64(3, 2));
        assert_eq!(parse_rational("7").unwrap(), PosRational::integer(7));
        assert!(parse_rational("0/3").is_err());
        assert!(parse_rational("-1/3").is_err());
        assert!(parse_rational("a").is_err());
    }
}
