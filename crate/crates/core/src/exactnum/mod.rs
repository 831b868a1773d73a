//! Exact arithmetic in a cyclotomic field ℚ(ζ_N) with high-precision complex
//! embedding.
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)−1}, reduced by the
//! N-th cyclotomic polynomial, so equality is coordinate equality.

mod field;
mod hiprec;
mod matrix;
mod scalar;
mod sqrt;

use thiserror::Error;

pub use field::{cyclotomic_polynomial, field, totient, CycField};
pub use hiprec::{bits_for_digits, embed, embed_bits, embed_f64, pi, HpComplex};
pub use matrix::CycMatrix;
pub use scalar::{arith, phase, root_of_unity, scalar_field, ArithKind, CycScalar};
pub use sqrt::sqrt_in_field;

/// Errors raised by exact field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field order mismatch: {left} vs {right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("field order {order} is not divisible by 2·{denominator}")]
    OrderTooSmall { order: u32, denominator: u64 },
    #[error("invalid field order {0}: must be even and positive")]
    InvalidOrder(u32),
    #[error("singular matrix")]
    Singular,
}
