//! Exact logarithmic-number-system (LNS) arithmetic over a rational base
//! `b = P/Q`, with certified relative-error tolerances.
//!
//! * [`exactq`]: exact comparison of a rational against `b^e`.
//! * [`logconv`]: `floor(log_b x)` by reference search and by bisection.
//! * [`lnscore`]: the addition table, its axioms, and Level-1 operations.
//! * [`tablefile`]: the `LNS1` text format for tables.
//! * [`tolerance`]: tolerance predicates and propagation rules.
//! * [`expr`]: expression parsing and certified evaluation.
//! * [`level2`]: bounded-range arithmetic with out-of-range signalling.

pub mod error;
pub mod exactq;
pub mod expr;
pub mod level2;
pub mod lnscore;
pub mod logconv;
pub mod tablefile;
pub mod tolerance;

pub use error::{LnsError, Result};
pub use exactq::{cmp_pow, in_closed_interval, pow_rational, Base, PosRational};
pub use expr::{certify_expression, parse_expr, AddMode, Certified, Expr, SumOrder};
pub use level2::{Level2Value, RangeConfig};
pub use lnscore::{build_table, verify_axioms, Rep, SumTable};
pub use logconv::{floor_log, floor_log_fast, precision_of_base};
pub use tolerance::{TolRep, Tolerance};
