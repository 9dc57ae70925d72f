use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Everything that can go wrong across the kit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LnsError {
    #[error("invalid base {p}/{q}: {reason}")]
    InvalidBase {
        p: BigUint,
        q: BigUint,
        reason: &'static str,
    },

    #[error("rational {num}/{den} is not positive")]
    NonPositive { num: BigInt, den: BigInt },

    #[error("value {value} is below 1")]
    BelowOne { value: String },

    /// The reference search ran out of its N*Q iteration budget. This can only
    /// happen if the proven termination bound is wrong, so it signals a bug.
    #[error("search budget exhausted before the logarithm was found (value {value}, base {base})")]
    BudgetExhausted { value: String, base: String },

    #[error("index {z} is outside the addition table (SEZ = {sez})")]
    IndexOutOfTable { z: String, sez: u64 },

    #[error("axiom ({axiom}) violated{}", witness_suffix(.witness))]
    AxiomViolation { axiom: u8, witness: Option<u64> },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("subtraction at byte {pos} is not supported: Level 1 has no subtraction operator")]
    Subtraction { pos: usize },

    #[error("table file line {line}: {msg}")]
    TableFormat { line: usize, msg: String },

    #[error("invalid tolerance ({lo}, {hi}): low bound exceeds high bound")]
    InvalidTolerance { lo: i64, hi: i64 },

    #[error("invalid Level 2 range [{min}, {max}]: min must be strictly below max")]
    InvalidRange { min: BigInt, max: BigInt },

    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),

    /// A certified tolerance failed to contain the exact value.
    #[error("soundness violation: {0}")]
    Unsound(String),
}

fn witness_suffix(witness: &Option<u64>) -> String {
    match witness {
        Some(z) => format!(" at Z = {z}"),
        None => String::new(),
    }
}

pub type Result<T, E = LnsError> = std::result::Result<T, E>;
